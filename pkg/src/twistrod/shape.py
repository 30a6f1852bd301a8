"""Stiffness profiles, cross-section law, rod description, and quadrature.

The dimensionless stiffness profile F is defined on the rod span
[0, L].  Bending stiffness along the rod is E * J_ref * F(xi).  The
cross-section law ties the profile to the cross-sectional area through
F * J_ref = alpha_n * A**n with n in {1, 2, 3}.

All types are immutable after construction and every operation is a
pure function, so everything here is safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad

from .errors import QuadratureError

# Profiles whose minimum falls below this fraction of their maximum are
# rejected: the coordinate map integrand 1/F must stay finite.
MIN_RELATIVE_STIFFNESS = 1e-9

DEFAULT_QUAD_TOL = 1e-10

VALID_KINDS = ("constant", "piecewise", "sampled")


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = DEFAULT_QUAD_TOL,
    breakpoints: Sequence[float] | None = None,
) -> float:
    """Adaptive quadrature of ``f`` over [a, b] with relative tolerance ``tol``.

    When ``breakpoints`` are supplied the interval is split there and each
    panel is integrated separately; piecewise-constant integrands then come
    out exact up to roundoff because the Gauss-Kronrod nodes never straddle
    a discontinuity.

    Raises QuadratureError (carrying the best estimate) if the underlying
    adaptive rule reports non-convergence.
    """
    if not a <= b:
        raise ValueError(f"integration bounds must satisfy a <= b, got [{a}, {b}]")
    if a == b:
        return 0.0

    edges = [a, b]
    if breakpoints is not None:
        edges = sorted({a, b, *(float(t) for t in breakpoints if a < t < b)})

    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        out = quad(f, lo, hi, epsabs=0.0, epsrel=tol, limit=200, full_output=1)
        if len(out) > 3:  # quad appends a message on trouble
            raise QuadratureError(
                f"quadrature did not converge on [{lo}, {hi}]: {out[3]}",
                best_estimate=total + out[0],
            )
        total += out[0]
    return total


@dataclass(frozen=True)
class ShapeFunction:
    """Positive stiffness profile F on the rod span [0, L].

    Three representations are supported:

    * ``constant`` -- one value everywhere,
    * ``piecewise`` -- constant on half-open segments [b_i, b_{i+1}),
      the last segment closed,
    * ``sampled`` -- values on a uniform grid, piecewise-linear in
      between.

    Use the classmethod constructors; they validate positivity (min F
    must exceed 1e-9 of max F), domain length, and breakpoint ordering.
    """

    kind: str
    L: float
    values: np.ndarray
    breakpoints: np.ndarray | None = field(default=None)

    # -- constructors -------------------------------------------------

    @classmethod
    def constant(cls, value: float, L: float = 1.0) -> "ShapeFunction":
        shape = cls(kind="constant", L=float(L), values=np.array([float(value)]))
        shape._validate()
        return shape

    @classmethod
    def piecewise(
        cls, breakpoints: Sequence[float], values: Sequence[float]
    ) -> "ShapeFunction":
        """Piecewise-constant profile; ``breakpoints`` run from 0 to L and
        bound one more point than there are segment ``values``."""
        bp = np.asarray(breakpoints, dtype=float)
        vals = np.asarray(values, dtype=float)
        if bp.ndim != 1 or bp.size < 2:
            raise ValueError("piecewise profile needs at least two breakpoints")
        if vals.size != bp.size - 1:
            raise ValueError(
                f"expected {bp.size - 1} segment values for {bp.size} breakpoints, "
                f"got {vals.size}"
            )
        if bp[0] != 0.0:
            raise ValueError("first breakpoint must be 0")
        if np.any(np.diff(bp) <= 0):
            raise ValueError("breakpoints must be strictly increasing")
        shape = cls(kind="piecewise", L=float(bp[-1]), values=vals, breakpoints=bp)
        shape._validate()
        return shape

    @classmethod
    def sampled(cls, values: Sequence[float], L: float = 1.0) -> "ShapeFunction":
        """Profile sampled on a uniform grid over [0, L], linear in between."""
        vals = np.asarray(values, dtype=float)
        if vals.ndim != 1 or vals.size < 2:
            raise ValueError("sampled profile needs at least two grid values")
        shape = cls(kind="sampled", L=float(L), values=vals)
        shape._validate()
        return shape

    # -- validation ---------------------------------------------------

    def _validate(self) -> None:
        if self.kind not in VALID_KINDS:
            raise ValueError(f"unknown shape kind {self.kind!r}")
        if not (self.L > 0.0) or not math.isfinite(self.L):
            raise ValueError(f"domain length must be positive, got {self.L}")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("profile values must be finite")
        # Probe segment values / grid nodes and panel midpoints.  For the
        # constant and piecewise kinds the probes are exhaustive; for the
        # linear interpolant the minimum is attained at a node anyway.
        probes = [self.values]
        edges = self.panel_edges()
        probes.append(self.evaluate(0.5 * (edges[:-1] + edges[1:])))
        lo = min(float(np.min(p)) for p in probes)
        hi = max(float(np.max(p)) for p in probes)
        if lo <= 0.0 or lo <= MIN_RELATIVE_STIFFNESS * hi:
            raise ValueError(
                f"profile must be strictly positive (min {lo:g} vs max {hi:g})"
            )

    # -- queries ------------------------------------------------------

    def evaluate(self, xi: float | np.ndarray) -> float | np.ndarray:
        """F(xi).  Accepts a scalar or an array; raises on out-of-domain input."""
        x = np.asarray(xi, dtype=float)
        if np.any(x < 0.0) or np.any(x > self.L):
            raise ValueError(f"coordinate outside [0, {self.L}]")
        if self.kind == "constant":
            out = np.full_like(x, self.values[0])
        elif self.kind == "piecewise":
            idx = np.searchsorted(self.breakpoints, x, side="right") - 1
            idx = np.clip(idx, 0, self.values.size - 1)
            out = self.values[idx]
        else:  # sampled, piecewise-linear
            grid = np.linspace(0.0, self.L, self.values.size)
            out = np.interp(x, grid, self.values)
        if np.isscalar(xi) or np.ndim(xi) == 0:
            return float(out)
        return out

    __call__ = evaluate

    def panel_edges(self) -> np.ndarray:
        """Boundaries of the maximal smooth panels (used to align quadrature
        and fixed-step integration with any discontinuities or kinks)."""
        if self.kind == "piecewise":
            return np.asarray(self.breakpoints, dtype=float)
        if self.kind == "sampled":
            return np.linspace(0.0, self.L, self.values.size)
        return np.array([0.0, self.L])

    def min_value(self) -> float:
        return float(np.min(self.values))

    def max_value(self) -> float:
        return float(np.max(self.values))

    def scaled(self, factor: float) -> "ShapeFunction":
        """New profile with every value multiplied by ``factor`` > 0."""
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        if self.kind == "piecewise":
            return ShapeFunction.piecewise(self.breakpoints, self.values * factor)
        if self.kind == "sampled":
            return ShapeFunction.sampled(self.values * factor, self.L)
        return ShapeFunction.constant(self.values[0] * factor, self.L)

    # -- JSON descriptor ----------------------------------------------

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "L": self.L, "values": self.values.tolist()}
        if self.kind == "piecewise":
            d["breakpoints"] = self.breakpoints.tolist()
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ShapeFunction":
        """Parse the JSON shape descriptor
        {"kind": ..., "L": ..., "values": [...], "breakpoints": [...]}"""
        try:
            kind = d["kind"]
        except (TypeError, KeyError):
            raise ValueError("shape descriptor missing 'kind'") from None
        if kind == "constant":
            values = d.get("values")
            if not values or len(values) != 1:
                raise ValueError("constant shape needs exactly one entry in 'values'")
            return cls.constant(values[0], d.get("L", 1.0))
        if kind == "piecewise":
            if "breakpoints" not in d:
                raise ValueError("piecewise shape needs 'breakpoints'")
            return cls.piecewise(d["breakpoints"], d.get("values", []))
        if kind == "sampled":
            if "L" not in d:
                raise ValueError("sampled shape needs 'L'")
            return cls.sampled(d.get("values", []), d["L"])
        raise ValueError(f"unknown shape kind {kind!r}")


@dataclass(frozen=True)
class CrossSectionLaw:
    """Power law F * J_ref = alpha * A**n relating stiffness to area.

    The exponent is restricted to n in {1, 2, 3}; ``alpha`` carries units
    length**(4 - 2n) so that A**n * alpha has units of length**4.  For the
    geometrically similar solid circular section n = 2 with
    alpha = 1 / (4 pi).
    """

    n: int
    alpha: float

    def __post_init__(self) -> None:
        if self.n not in (1, 2, 3):
            raise ValueError(f"section-law exponent must be 1, 2 or 3, got {self.n}")
        if not (self.alpha > 0.0) or not math.isfinite(self.alpha):
            raise ValueError(f"section-law coefficient must be positive, got {self.alpha}")

    @classmethod
    def solid_circle(cls) -> "CrossSectionLaw":
        return cls(n=2, alpha=1.0 / (4.0 * math.pi))

    def to_dict(self) -> dict:
        return {"n": self.n, "alpha": self.alpha}

    @classmethod
    def from_dict(cls, d: dict) -> "CrossSectionLaw":
        try:
            return cls(n=int(d["n"]), alpha=float(d["alpha"]))
        except (TypeError, KeyError) as exc:
            raise ValueError(f"law descriptor needs 'n' and 'alpha': {exc}") from None


@dataclass(frozen=True)
class RodSpec:
    """Full rod description: modulus, reference inertia, profile, section law.

    The library is unit-agnostic; the caller must keep E, J_ref, lengths and
    alpha in one consistent system.
    """

    E: float
    J_ref: float
    shape: ShapeFunction
    law: CrossSectionLaw

    def __post_init__(self) -> None:
        if not (self.E > 0.0 and math.isfinite(self.E)):
            raise ValueError(f"Young's modulus must be positive, got {self.E}")
        if not (self.J_ref > 0.0 and math.isfinite(self.J_ref)):
            raise ValueError(f"reference inertia must be positive, got {self.J_ref}")

    def stiffness(self, xi: float | np.ndarray) -> float | np.ndarray:
        """Bending stiffness E * J_ref * F(xi) along the rod."""
        return self.E * self.J_ref * self.shape.evaluate(xi)


@dataclass(frozen=True)
class AreaProfile:
    """Cross-sectional area A(xi) on [0, L] plus its integral, the volume.

    ``area`` evaluates pointwise (vectorized); ``panel_values`` is set only
    for piecewise-constant profiles, where it exposes the per-panel areas
    that the optimizer treats as design variables.
    """

    area: Callable[[np.ndarray], np.ndarray]
    L: float
    volume: float
    panel_edges: np.ndarray
    panel_values: np.ndarray | None = None

    @classmethod
    def piecewise(cls, breakpoints: Sequence[float], areas: Sequence[float]) -> "AreaProfile":
        profile = ShapeFunction.piecewise(breakpoints, areas)
        vals = np.asarray(areas, dtype=float)
        widths = np.diff(np.asarray(breakpoints, dtype=float))
        return cls(
            area=profile.evaluate,
            L=profile.L,
            volume=float(np.sum(widths * vals)),
            panel_edges=profile.panel_edges(),
            panel_values=vals,
        )

    @classmethod
    def constant(cls, value: float, L: float) -> "AreaProfile":
        return cls.piecewise([0.0, L], [value])

    @property
    def mean_area(self) -> float:
        return self.volume / self.L

    def max_relative_deviation(self, probes: int = 2049) -> float:
        """sup |A - mean| / mean over panel edges, midpoints and a dense grid."""
        pts = np.union1d(
            np.linspace(0.0, self.L, probes),
            np.union1d(
                self.panel_edges,
                0.5 * (self.panel_edges[:-1] + self.panel_edges[1:]),
            ),
        )
        a = np.asarray(self.area(pts), dtype=float)
        mean = self.mean_area
        return float(np.max(np.abs(a - mean)) / mean)


def area_profile(spec: RodSpec) -> AreaProfile:
    """Derive the area profile A = (F * J_ref / alpha)**(1/n) of a rod.

    The area is evaluated pointwise from the exact stiffness profile (no
    resampling); the volume integrates it with the profile's panels as
    quadrature boundaries.
    """
    n = spec.law.n
    alpha = spec.law.alpha
    shape = spec.shape

    def area(xi: np.ndarray) -> np.ndarray:
        return (np.asarray(shape.evaluate(xi)) * spec.J_ref / alpha) ** (1.0 / n)

    edges = shape.panel_edges()
    volume = integrate(lambda t: float(area(t)), 0.0, shape.L, breakpoints=edges)
    values = None
    if shape.kind in ("constant", "piecewise"):
        values = (shape.values * spec.J_ref / alpha) ** (1.0 / n)
    return AreaProfile(
        area=area,
        L=shape.L,
        volume=volume,
        panel_edges=edges,
        panel_values=values,
    )


def stiffness_from_area(profile: AreaProfile, J_ref: float, law: CrossSectionLaw) -> ShapeFunction:
    """Invert the section law: F = alpha * A**n / J_ref (piecewise profiles only)."""
    if profile.panel_values is None:
        raise ValueError("stiffness reconstruction needs a piecewise area profile")
    values = law.alpha * profile.panel_values**law.n / J_ref
    return ShapeFunction.piecewise(profile.panel_edges, values)
