"""Seeded pseudo-random test-case generation, reproducible across platforms.

The generator is a 64-bit linear congruential generator with Knuth's
MMIX constants, so the integer stream is identical everywhere; floats
are derived from the top 53 bits.  Random piecewise profiles draw a
segment count uniform on [2, 8] and segment values log-uniform on
[0.5, 4] over a unit span, which is the case family used by the
cross-validation suites.
"""

from __future__ import annotations

import math

from .anisotropic import AnisotropicRodSpec, AnisotropicSection
from .shape import CrossSectionLaw, RodSpec, ShapeFunction

LCG_MULTIPLIER = 6364136223846793005
LCG_INCREMENT = 1442695040888963407
LCG_MODULUS = 1 << 64

SEGMENT_RANGE = (2, 8)
VALUE_RANGE = (0.5, 4.0)

# Deterministic per-exponent coefficients for random-law cases: the circle
# value for n = 2, unity otherwise.
LAW_ALPHAS = {1: 1.0, 2: 1.0 / (4.0 * math.pi), 3: 1.0}


class Lcg64:
    """64-bit LCG (MMIX constants); uniform floats from the top 53 bits."""

    def __init__(self, seed: int) -> None:
        self.state = seed % LCG_MODULUS

    def next_uint(self) -> int:
        self.state = (LCG_MULTIPLIER * self.state + LCG_INCREMENT) % LCG_MODULUS
        return self.state

    def uniform(self) -> float:
        """Uniform float in [0, 1)."""
        return (self.next_uint() >> 11) * 2.0**-53

    def integer(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] inclusive."""
        return lo + int(self.uniform() * (hi - lo + 1))

    def log_uniform(self, lo: float, hi: float) -> float:
        return math.exp(math.log(lo) + self.uniform() * (math.log(hi) - math.log(lo)))


def random_piecewise_shape(rng: Lcg64, L: float = 1.0) -> ShapeFunction:
    """Equal-length piecewise profile: 2-8 segments, values in [0.5, 4]."""
    segments = rng.integer(*SEGMENT_RANGE)
    values = [rng.log_uniform(*VALUE_RANGE) for _ in range(segments)]
    breakpoints = [L * i / segments for i in range(segments + 1)]
    return ShapeFunction.piecewise(breakpoints, values)


def law_for_exponent(n: int) -> CrossSectionLaw:
    return CrossSectionLaw(n=n, alpha=LAW_ALPHAS[n])


def random_rod_spec(rng: Lcg64, n: int | None = None) -> RodSpec:
    """Unit-modulus, unit-reference-inertia rod with a random profile."""
    if n is None:
        n = rng.integer(1, 3)
    return RodSpec(E=1.0, J_ref=1.0, shape=random_piecewise_shape(rng), law=law_for_exponent(n))


def random_anisotropic_spec(rng: Lcg64) -> AnisotropicRodSpec:
    """Random profile with independent log-uniform inertias in [0.25, 4]."""
    shape = random_piecewise_shape(rng)
    section = AnisotropicSection(
        Jy=rng.log_uniform(0.25, 4.0), Jz=rng.log_uniform(0.25, 4.0)
    )
    return AnisotropicRodSpec(E=1.0, section=section, shape=shape, law=law_for_exponent(2))


def random_areas(rng: Lcg64, segments: int) -> list[float]:
    """Log-uniform panel areas in [0.5, 4] for optimizer starting points."""
    return [rng.log_uniform(*VALUE_RANGE) for _ in range(segments)]
