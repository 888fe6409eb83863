"""Hilbert functions of complete intersections.

For a regular sequence of forms of degrees d_1..d_r in k[x_0..x_n] the graded
pieces of the ideal and of the quotient have dimensions given by alternating
sums of shifted binomials over subsets of the degrees (the Koszul complex is
exact). Two independent oracles are provided for cross-checks: a truncated
power-series expansion of prod(1 - q^d_i) / (1 - q)^(n+1), and a direct count
of monomials modulo pure powers x_j^d_j.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from .errors import InvalidInput, ResourceError
from .exactnum import binom_trunc

MONOMIAL_BUDGET = 10**7

CORRECTED = "corrected"
AS_WRITTEN = "as_written"


@dataclass(frozen=True)
class IdealSpec:
    """Degrees of a regular sequence in ``ambient_dim + 1`` variables."""

    ambient_dim: int
    gen_degrees: tuple[int, ...] = ()

    def __post_init__(self):
        if self.ambient_dim < 0:
            raise InvalidInput(f"ambient_dim must be >= 0, got {self.ambient_dim}")
        degs = tuple(sorted(int(x) for x in self.gen_degrees))
        if any(x < 1 for x in degs):
            raise InvalidInput(f"generator degrees must be positive: {degs}")
        if len(degs) > self.ambient_dim + 1:
            raise InvalidInput(
                f"a regular sequence in {self.ambient_dim + 1} variables has at most "
                f"{self.ambient_dim + 1} elements, got {len(degs)}"
            )
        object.__setattr__(self, "gen_degrees", degs)

    @property
    def nvars(self) -> int:
        return self.ambient_dim + 1

    @property
    def socle_degree(self) -> int:
        """Top nonzero degree of the quotient; only meaningful when Artinian."""
        return sum(d - 1 for d in self.gen_degrees)

    @property
    def is_artinian(self) -> bool:
        return len(self.gen_degrees) == self.nvars


def signed_partial_sums(degrees, convention: str = CORRECTED) -> list[tuple[int, int]]:
    """(t, sgn) for every nonempty subset of ``degrees``, t the subset sum.

    ``corrected`` gives +1 to odd-size subsets (the Koszul signs);
    ``as_written`` gives +1 to even-size subsets.
    """
    if convention not in (CORRECTED, AS_WRITTEN):
        raise InvalidInput(f"unknown sign convention {convention!r}")
    out = []
    for size in range(1, len(degrees) + 1):
        odd = size % 2 == 1
        sgn = 1 if odd == (convention == CORRECTED) else -1
        for sub in combinations(degrees, size):
            out.append((sum(sub), sgn))
    return out


def ideal_slice_dim(ideal: IdealSpec, level: int, convention: str = CORRECTED) -> int:
    n = ideal.ambient_dim
    return sum(
        sgn * binom_trunc(level - t + n, n)
        for t, sgn in signed_partial_sums(ideal.gen_degrees, convention)
    )


@lru_cache(maxsize=65536)
def _quotient_hf(n: int, degrees: tuple[int, ...], level: int) -> int:
    total = 0
    for size in range(len(degrees) + 1):
        sign = -1 if size % 2 else 1
        for sub in combinations(degrees, size):
            total += sign * binom_trunc(level - sum(sub) + n, n)
    return total


def quotient_hf(ideal: IdealSpec, level: int) -> int:
    """Dimension of the degree-``level`` piece of R / (g_1..g_r)."""
    if level < 0:
        return 0
    return _quotient_hf(ideal.ambient_dim, ideal.gen_degrees, level)


def quotient_hf_series_oracle(ideal: IdealSpec, max_level: int) -> list[int]:
    """Coefficients 0..max_level of prod(1 - q^d) / (1 - q)^(n+1)."""
    if max_level < 0:
        raise InvalidInput("max_level must be >= 0")
    size = max_level + 1
    poly = [0] * size
    poly[0] = 1
    for d in ideal.gen_degrees:
        nxt = poly[:]
        for i in range(d, size):
            nxt[i] -= poly[i - d]
        poly = nxt
    # dividing by (1 - q) is a running prefix sum
    for _ in range(ideal.nvars):
        acc = 0
        for i in range(size):
            acc += poly[i]
            poly[i] = acc
    return poly


def quotient_hf_monomial_oracle(ideal: IdealSpec, level: int, budget: int = MONOMIAL_BUDGET) -> int:
    """Count degree-``level`` monomials not divisible by any x_j^d_j.

    The j-th generator is taken to be x_j^d_j. Exponents of the constrained
    variables are enumerated; the remaining free variables absorb the leftover
    degree in C(rest + f - 1, f - 1) ways.
    """
    if level < 0:
        return 0
    if binom_trunc(level + ideal.ambient_dim, ideal.ambient_dim) > budget:
        raise ResourceError(
            f"monomial enumeration for level {level} in {ideal.nvars} variables exceeds budget {budget}"
        )
    free = ideal.nvars - len(ideal.gen_degrees)
    ranges = [range(min(d, level + 1)) for d in ideal.gen_degrees]
    count = 0
    for exps in product(*ranges):
        rest = level - sum(exps)
        if rest < 0:
            continue
        if free == 0:
            count += rest == 0
        else:
            count += binom_trunc(rest + free - 1, free - 1)
    return count
