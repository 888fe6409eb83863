"""Closed-form genus bounds, their small-n specializations and comparison formulas."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, factorial, prod

from .errors import CigenusError, InfeasibleError, InvalidInput
from .exactnum import binom_trunc
from .gamma import RELAXED, TIGHT, CurveInstance, SurfaceSpec, threshold_check
from .hilbert import AS_WRITTEN, CORRECTED, signed_partial_sums
from .optimize import genus_bound_opt

STRICT = "strict"
INCLUSIVE = "inclusive"


def _pair_sum(ks, pairs: str) -> int:
    """sum_{i>=2} sum_j k_i k_j over j < i (``strict``) or j <= i (``inclusive``)."""
    total = sum(a * b for a, b in combinations(ks, 2))
    if pairs == INCLUSIVE:
        total += sum(a * a for a in ks[1:])
    elif pairs != STRICT:
        raise InvalidInput(f"unknown pair reading {pairs!r}")
    return total


def constant_bracket(surface: SurfaceSpec, pairs: str = STRICT) -> Fraction:
    ks, n = surface.degrees, surface.n
    return (
        sum(k * k for k in ks)
        + 3 * _pair_sum(ks, pairs)
        - 3 * (n - 2) * surface.sigma_k
        + Fraction((n - 2) * (3 * n - 5), 2)
    )


def closed_form_bound(inst: CurveInstance, pairs: str = STRICT) -> Fraction:
    """Closed-form genus bound for a degree-d curve on the surface.

    Valid under d >= K * sigma_k; the value is returned regardless and callers
    check :func:`threshold_check` separately.
    """
    s, d = inst.surface, inst.d
    K, n = s.K, s.n
    eps = inst.epsilon
    return (
        Fraction(d * d, 2 * K)
        + Fraction(d * (s.sigma_k - n - 1), 2)
        - Fraction(eps * eps, 2 * K)
        + 1
        + Fraction(K, 12) * constant_bracket(s, pairs)
    )


def _eps(K: int, d: int) -> int:
    return d - K * -(-d // K)


def specialization_n4(k1: int, k2: int, d: int) -> Fraction:
    K = k1 * k2
    e = _eps(K, d)
    return (
        Fraction(d * d, 2 * K)
        + Fraction(d * (k1 + k2 - 5), 2)
        - Fraction(e * e, 2 * K)
        + 1
        + Fraction(K, 12) * (k1**2 + k2**2 + 3 * k1 * k2 - 6 * (k1 + k2) + 7)
    )


def specialization_n5(k1: int, k2: int, k3: int, d: int) -> Fraction:
    K = k1 * k2 * k3
    e = _eps(K, d)
    return (
        Fraction(d * d, 2 * K)
        + Fraction(d * (k1 + k2 + k3 - 6), 2)
        - Fraction(e * e, 2 * K)
        + 1
        + Fraction(K, 12)
        * (
            k1**2 + k2**2 + k3**2
            + 3 * k1 * k2 + 3 * k1 * k3 + 3 * k2 * k3
            - 9 * (k1 + k2 + k3)
            + 15
        )
    )


def leading_terms(surface: SurfaceSpec) -> tuple[Fraction, Fraction]:
    """(coefficient of d^2, coefficient of d)."""
    return Fraction(1, 2 * surface.K), Fraction(surface.sigma_k - surface.n - 1, 2)


def calclem_check(A: int, B: int, n: int):
    """Both sides of sum_{i=A}^{A+B-1} (i-1) C(i+n-2-A, n-2) = (1/n) C(B+n-2, n-1) (nA + (n-1)B - 2n + 1)."""
    if A < 0 or B < 0 or n < 2:
        raise InvalidInput("need A, B >= 0 and n >= 2")
    lhs = sum((i - 1) * binom_trunc(i + n - 2 - A, n - 2) for i in range(A, A + B))
    rhs = Fraction(binom_trunc(B + n - 2, n - 1) * (n * A + (n - 1) * B - 2 * n + 1), n)
    return Fraction(lhs), rhs, lhs == rhs


def stir_alternating_sum(surface: SurfaceSpec, convention: str) -> Fraction:
    n = surface.n
    sign = Fraction((-1) ** n, n)
    return sum(
        (sign * sgn * t * comb(t + n - 2, n - 1) for t, sgn in signed_partial_sums(surface.degrees, convention)),
        Fraction(0),
    )


def stir_rhs(surface: SurfaceSpec, pairs: str) -> Fraction:
    ks, n, K = surface.degrees, surface.n, surface.K
    double = _pair_sum(ks, pairs)
    bracket = (
        Fraction(sum(k * k for k in ks), 6)
        + Fraction(double, 4)
        + Fraction(comb(n - 1, 2), 2 * n) * surface.sigma_k
        + Fraction(factorial(n - 2) * (3 * n - 4) * comb(n - 1, 3), 4 * factorial(n))
    )
    return -K * bracket


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _compositions(total: int, parts: int):
    """Tuples of ``parts`` positive integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def divisible_part(coeffs, ks) -> Fraction:
    """Value at ``ks`` of the part of p(k_1 + ... + k_r) divisible by k_1...k_r.

    ``coeffs`` are the coefficients of the univariate polynomial p in the sum
    s = k_1 + ... + k_r. Each s^j is expanded with multinomial coefficients and
    only monomials using every variable are kept.
    """
    r = len(ks)
    total = Fraction(0)
    for j, c in enumerate(coeffs):
        if c == 0 or j < r:
            continue
        part = 0
        for exps in _compositions(j, r):
            mult = factorial(j)
            for e in exps:
                mult //= factorial(e)
            part += mult * prod(k**e for k, e in zip(ks, exps))
        total += c * part
    return total


def stir_oracle(surface: SurfaceSpec) -> Fraction:
    """Divisible part of (1/n!) s^2 (s+1)...(s+n-2) with s = sum of degrees."""
    n = surface.n
    poly = [Fraction(0), Fraction(0), Fraction(1)]
    for a in range(1, n - 1):
        poly = _poly_mul(poly, [Fraction(a), Fraction(1)])
    poly = [c / factorial(n) for c in poly]
    return divisible_part(poly, surface.degrees)


@dataclass
class StirAudit:
    surface: SurfaceSpec
    oracle: Fraction
    lhs: dict
    rhs: dict
    rows: list = field(default_factory=list)

    def matching(self) -> list[tuple[str, str]]:
        return [(c, p) for c, p, _, _, eq in self.rows if eq]


def stir_check(surface: SurfaceSpec) -> StirAudit:
    """Evaluate every sign/pair-reading variant of the alternating-sum identity.

    Nothing is asserted; each row records (sign convention, pair reading,
    lhs, rhs, lhs == rhs). The oracle value is reported alongside.
    """
    lhs = {c: stir_alternating_sum(surface, c) for c in (AS_WRITTEN, CORRECTED)}
    rhs = {p: stir_rhs(surface, p) for p in (INCLUSIVE, STRICT)}
    rows = [(c, p, lhs[c], rhs[p], lhs[c] == rhs[p]) for c in lhs for p in rhs]
    return StirAudit(surface, stir_oracle(surface), lhs, rhs, rows)


def ci_curve_genus(ambient_n: int, degrees) -> int:
    """Arithmetic genus of a complete intersection curve, from adjunction."""
    degrees = list(degrees)
    if len(degrees) != ambient_n - 1:
        raise InvalidInput(f"a curve in P^{ambient_n} needs {ambient_n - 1} degrees, got {len(degrees)}")
    if any(x < 1 for x in degrees):
        raise InvalidInput("degrees must be positive")
    g = 1 + Fraction(prod(degrees) * (sum(degrees) - ambient_n - 1), 2)
    if g.denominator != 1:
        raise CigenusError(f"non-integral complete intersection genus {g}")
    return int(g)


def _threefold_check(threefold_degrees, ambient_n):
    threefold_degrees = list(threefold_degrees)
    if len(threefold_degrees) != ambient_n - 3:
        raise InvalidInput(
            f"a threefold in P^{ambient_n} needs {ambient_n - 3} degrees, got {len(threefold_degrees)}"
        )
    return threefold_degrees


def bms_small_degree_bound(threefold_degrees, ambient_n: int, d: int) -> tuple[Fraction, bool]:
    """Conjectured small-degree bound and whether d <= prod(k)/2."""
    ks = _threefold_check(threefold_degrees, ambient_n)
    value = Fraction(d * (sum(ks) - ambient_n - 1), 2) + Fraction(2 * d, 3) + 1
    return value, 2 * d <= prod(ks)


def bms_castelnuovo_bound(threefold_degrees, ambient_n: int, d: int) -> Fraction:
    ks = _threefold_check(threefold_degrees, ambient_n)
    return (
        Fraction(2 * d * d, 3 * prod(ks))
        + Fraction(5 + 3 * (sum(ks) - ambient_n - 1), 6) * d
        + 1
    )


@dataclass
class BoundReport:
    instance: CurveInstance
    hypothesis_ok: bool
    closed_form: Fraction | None = None
    relaxed: Fraction | None = None
    tight: Fraction | None = None
    relaxed_m: int | None = None
    tight_m: int | None = None
    tight_window: tuple[int, int] | None = None
    leading: tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))
    comparisons: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    errors: dict = field(default_factory=dict)

    @property
    def discrepancies(self) -> list:
        return [c for c in self.checks if not c[1]]


ALL_MODES = ("closed-form", RELAXED, TIGHT)


def build_report(inst: CurveInstance, modes=ALL_MODES) -> BoundReport:
    """Evaluate the requested bounds and cross-check whatever overlaps.

    Infeasible optimizer modes are recorded in ``errors`` rather than raised.
    """
    rep = BoundReport(instance=inst, hypothesis_ok=threshold_check(inst), leading=leading_terms(inst.surface))
    if "closed-form" in modes:
        rep.closed_form = closed_form_bound(inst)
    for mode in (RELAXED, TIGHT):
        if mode not in modes:
            continue
        try:
            res = genus_bound_opt(inst, mode)
        except InfeasibleError as exc:
            rep.errors[mode] = str(exc)
            continue
        setattr(rep, mode, res.genus_bound)
        setattr(rep, f"{mode}_m", res.chosen_m)
        if mode == TIGHT:
            rep.tight_window = res.window
    # the cross-checks rely on the large-degree hypothesis; outside it they are only notes
    sink = rep.checks if rep.hypothesis_ok else rep.notes
    if rep.closed_form is not None and rep.relaxed is not None:
        same = rep.closed_form == rep.relaxed
        detail = "" if same else f"closed form {rep.closed_form} != relaxed optimum {rep.relaxed}"
        sink.append(("closed_form == relaxed", same, detail))
    if rep.tight is not None and rep.relaxed is not None:
        ok = rep.tight <= rep.relaxed
        sink.append(("tight <= relaxed", ok, "" if ok else f"{rep.tight} > {rep.relaxed}"))
    return rep
