"""Rods whose cross-section has different principal inertias.

When the ratio k = J_y / J_z is constant along the span, rescaling the
deflection pair as Y = k**(1/4) * Y~, Z = k**(-1/4) * Z~ turns the
twist-buckling system into the isotropic one with the geometric-mean
inertia J = sqrt(J_y * J_z); the critical torque therefore depends on
the two inertias only through their product.  This module carries out
that reduction and, independently, shoots the unreduced system to check
it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import RootSearchError
from .greenhill import BucklingResult, ModeShape, critical_torque as _isotropic_critical_torque
from .greenhill import critical_torque_value
from .oracle import DEFAULT_PROBES, DEFAULT_STEPS, DEFAULT_TOL, ShootingResult, build_step_grid, propagate
from .shape import CrossSectionLaw, RodSpec, ShapeFunction


@dataclass(frozen=True)
class AnisotropicSection:
    """Principal second moments of area about the two bending axes."""

    Jy: float
    Jz: float

    def __post_init__(self) -> None:
        if self.Jy <= 0 or self.Jz <= 0:
            raise ValueError(f"inertias must be positive, got Jy={self.Jy}, Jz={self.Jz}")

    @property
    def k(self) -> float:
        """Inertia ratio Jy / Jz (constant along the rod by assumption)."""
        return self.Jy / self.Jz


def effective_inertia(section: AnisotropicSection) -> float:
    """Geometric mean sqrt(Jy * Jz): the isotropic-equivalent inertia."""
    return math.sqrt(section.Jy * section.Jz)


@dataclass(frozen=True)
class AnisotropicRodSpec:
    """Rod description with distinct principal inertias at constant ratio."""

    E: float
    section: AnisotropicSection
    shape: ShapeFunction
    law: CrossSectionLaw

    def __post_init__(self) -> None:
        if self.E <= 0:
            raise ValueError(f"Young's modulus must be positive, got {self.E}")


def reduce_to_isotropic(spec: AnisotropicRodSpec) -> RodSpec:
    """Equivalent isotropic rod with J_ref = sqrt(Jy * Jz).

    The reduction also rescales the mode variables (see
    :func:`mode_to_anisotropic`); the critical torque is untouched.
    """
    return RodSpec(
        E=spec.E,
        J_ref=effective_inertia(spec.section),
        shape=spec.shape,
        law=spec.law,
    )


def mode_to_anisotropic(mode: ModeShape, k: float) -> ModeShape:
    """Map a reduced-system mode back to physical deflections.

    Applies (Y, Z) = (k**(1/4) y, k**(-1/4) z), renormalizes the result to
    unit peak amplitude, and rescales the integration constants with the
    inverse factors so the transformed samples still satisfy the
    anisotropic balance equations.
    """
    if k <= 0:
        raise ValueError(f"inertia ratio must be positive, got {k}")
    r = k**0.25
    y = mode.y * r
    z = mode.z / r
    c1 = mode.c1 / r
    c2 = mode.c2 * r
    scale = float(np.max(np.hypot(y, z)))
    return ModeShape(x=mode.x, y=y / scale, z=z / scale, c1=c1 / scale, c2=c2 / scale)


def mode_to_reduced(mode: ModeShape, k: float) -> ModeShape:
    """Inverse of :func:`mode_to_anisotropic` (up to normalization)."""
    return mode_to_anisotropic(mode, 1.0 / k)


def critical_torque(spec: AnisotropicRodSpec, mode_grid_size: int = 1025) -> BucklingResult:
    """Critical torque via the reduction, with the physical (back-mapped) mode."""
    reduced = _isotropic_critical_torque(
        reduce_to_isotropic(spec), mode_grid_size=mode_grid_size
    )
    mode = mode_to_anisotropic(reduced.mode, spec.section.k)
    return BucklingResult(
        M_crit=reduced.M_crit,
        mode_index=reduced.mode_index,
        c1=mode.c1,
        c2=mode.c2,
        mode=mode,
    )


def shoot_anisotropic(
    spec: AnisotropicRodSpec,
    M: float,
    steps: int = DEFAULT_STEPS,
    align_panels: bool = True,
) -> ShootingResult:
    """Endpoint matrix of the unreduced anisotropic system at torque ``M``.

    Integrates F*E*Jz * Y' = M Z + c1, F*E*Jy * Z' = -M Y + c2 exactly as
    written, with no change of variables, for the two constant-pair bases.
    With Jy = Jz this reproduces the isotropic shooting bit for bit.
    """
    if M <= 0:
        raise ValueError(f"torque must be positive, got {M}")
    grid = build_step_grid(
        spec.shape, spec.E, spec.section.Jy, spec.section.Jz, steps, align_panels
    )
    y1, z1 = propagate(grid, M, 1.0, 0.0)
    y2, z2 = propagate(grid, M, 0.0, 1.0)
    S = np.array([[y1, y2], [z1, z2]])
    return ShootingResult(S=S, det=y1 * z2 - y2 * z1, M=M)


def first_root_anisotropic(
    spec: AnisotropicRodSpec,
    bracket: tuple[float, float] | None = None,
    tol: float = DEFAULT_TOL,
    steps: int = DEFAULT_STEPS,
    probes: int = DEFAULT_PROBES,
) -> float:
    """Smallest torque at which the anisotropic endpoint matrix is singular.

    det S is a perfect square, so the search tracks the trace of S instead:
    it oscillates through zero twice per determinant root, and the
    eigenvalues sit exactly at its upward (minus to plus) crossings.  The
    located root is confirmed by checking that det S there is negligible
    against its size elsewhere in the scan; this keeps the search honest
    without assuming the isotropic reduction.
    """
    if bracket is None:
        estimate = critical_torque_value(reduce_to_isotropic(spec))
        bracket = (1e-3 * estimate, 4.0 * estimate)
    lo, hi = bracket
    if not 0.0 < lo < hi:
        raise ValueError(f"bracket must satisfy 0 < lo < hi, got {bracket}")

    grid = build_step_grid(spec.shape, spec.E, spec.section.Jy, spec.section.Jz, steps, True)

    def trace_and_det(m: float) -> tuple[float, float]:
        y1, z1 = propagate(grid, m, 1.0, 0.0)
        y2, z2 = propagate(grid, m, 0.0, 1.0)
        return y1 + z2, y1 * z2 - y2 * z1

    ms = np.linspace(lo, hi, probes + 1)
    traces = np.empty(probes + 1)
    dets = np.empty(probes + 1)
    root = None
    scanned = 0
    for i, m in enumerate(ms):
        traces[i], dets[i] = trace_and_det(m)
        scanned = i + 1
        if i == 0:
            continue
        if traces[i - 1] < 0.0 <= traces[i]:
            root = brentq(
                lambda x: trace_and_det(x)[0],
                ms[i - 1],
                ms[i],
                xtol=tol * ms[i],
                rtol=8.9e-16,
            )
            break
    if root is None:
        raise RootSearchError(
            f"no upward trace crossing in ({lo}, {hi}); "
            f"trace range [{traces[:scanned].min():.3e}, {traces[:scanned].max():.3e}]"
        )
    det_at_root = trace_and_det(float(root))[1]
    det_scale = float(np.max(np.abs(dets[:scanned])))
    if det_at_root > 1e-6 * det_scale:
        raise RootSearchError(
            f"trace crossing at M={root:.6g} is not an eigenvalue: "
            f"det {det_at_root:.3e} vs scan scale {det_scale:.3e}"
        )
    return float(root)
