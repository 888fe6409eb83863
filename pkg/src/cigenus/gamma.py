"""Constraint data for the gamma sequence of a curve on a complete intersection surface.

A surface S in P^n is cut out by forms of degrees k_1 <= ... <= k_{n-2}. After
restricting to a general P^{n-2}, the gamma values below the degree m of the
first extra section are the Hilbert function of the complete intersection
(k_1..k_{n-2}); from m on they are capped by the Hilbert function of
(k_1..k_{n-2}, m).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import prod

from .errors import InfeasibleError, InvalidInput
from .exactnum import ceil_div
from .hilbert import IdealSpec, quotient_hf

RELAXED = "relaxed"
TIGHT = "tight"
CUSTOM = "custom"


@dataclass(frozen=True)
class SurfaceSpec:
    n: int
    degrees: tuple[int, ...]

    def __post_init__(self):
        if self.n < 3:
            raise InvalidInput(f"ambient dimension n must be >= 3, got {self.n}")
        degs = tuple(sorted(int(k) for k in self.degrees))
        if len(degs) != self.n - 2:
            raise InvalidInput(f"a surface in P^{self.n} needs {self.n - 2} degrees, got {len(degs)}")
        if any(k < 1 for k in degs):
            raise InvalidInput(f"surface degrees must be positive: {degs}")
        object.__setattr__(self, "degrees", degs)

    @property
    def K(self) -> int:
        return prod(self.degrees)

    @property
    def sigma_k(self) -> int:
        return sum(self.degrees)

    @property
    def plateau_width(self) -> int:
        """sigma_k - n + 2; zero exactly when every degree is 1."""
        return self.sigma_k - self.n + 2

    @property
    def threshold(self) -> int:
        """Smallest curve degree allowed by the large-degree hypothesis."""
        return self.K * self.sigma_k

    def section_ideal(self) -> IdealSpec:
        return _ideal(self.n - 2, self.degrees)

    def envelope_ideal(self, m: int) -> IdealSpec:
        return _ideal(self.n - 2, self.degrees + (m,))


@lru_cache(maxsize=4096)
def _ideal(ambient: int, degrees: tuple[int, ...]) -> IdealSpec:
    return IdealSpec(ambient, degrees)


@dataclass(frozen=True)
class CurveInstance:
    surface: SurfaceSpec
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise InvalidInput(f"curve degree must be positive, got {self.d}")

    @classmethod
    def make(cls, n: int, degrees, d: int) -> "CurveInstance":
        return cls(SurfaceSpec(n, tuple(degrees)), d)

    @property
    def m0(self) -> int:
        return ceil_div(self.d, self.surface.K)

    @property
    def epsilon(self) -> int:
        # nonpositive; only its square is ever used
        return self.d - self.surface.K * self.m0


@dataclass(frozen=True)
class GammaProfile:
    """Finitely supported gamma values, index 0 first.

    ``m`` is the degree of the extra section the profile was built for.
    """

    values: tuple[Fraction, ...]
    m: int
    mode: str = CUSTOM
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def support_end(self) -> int:
        """One past the last nonzero index."""
        end = len(self.values)
        while end and self.values[end - 1] == 0:
            end -= 1
        return end

    @property
    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i] if 0 <= i < len(self.values) else Fraction(0)

    def objective(self) -> Fraction:
        """sum (i - 1) * gamma_i."""
        return sum(((i - 1) * g for i, g in enumerate(self.values)), Fraction(0))

    def tail(self) -> tuple[Fraction, ...]:
        return self.values[self.m:]


def gamma_initial(surface: SurfaceSpec, i: int) -> int:
    return quotient_hf(surface.section_ideal(), i)


def gamma_envelope(surface: SurfaceSpec, m: int, i: int) -> int:
    if m < 1:
        raise InvalidInput(f"m must be >= 1, got {m}")
    return quotient_hf(surface.envelope_ideal(m), i)


def vanish_index(surface: SurfaceSpec, m: int) -> int:
    if m < 1:
        raise InvalidInput(f"m must be >= 1, got {m}")
    return m + surface.plateau_width


def initial_segment(surface: SurfaceSpec, m: int) -> list[int]:
    return list(_initial_segment(surface, m))


@lru_cache(maxsize=4096)
def _initial_segment(surface: SurfaceSpec, m: int) -> tuple[int, ...]:
    return tuple(gamma_initial(surface, i) for i in range(m))


def tail_mass(inst: CurveInstance, m: int) -> int:
    """d minus the forced initial segment below m.

    Computed by direct subtraction, so it is valid for every m; in the range
    where the initial segment has reached K it agrees with
    :func:`tail_mass_closed`.
    """
    mass = inst.d - sum(initial_segment(inst.surface, m))
    if mass < 0:
        raise InfeasibleError(
            f"initial segment below m={m} already exceeds d={inst.d} (tail mass {mass})"
        )
    return mass


def tail_mass_closed(inst: CurveInstance, m: int, sign: int = -1) -> Fraction:
    """d - mK + K(sigma_k + sign*(n - 2))/2.

    ``sign=-1`` is the form that matches direct summation; ``sign=+1`` is kept
    for the audit of the alternative reading.
    """
    s = inst.surface
    return inst.d - m * s.K + Fraction(s.K * (s.sigma_k + sign * (s.n - 2)), 2)


def threshold_check(inst: CurveInstance) -> bool:
    return inst.d >= inst.surface.threshold
