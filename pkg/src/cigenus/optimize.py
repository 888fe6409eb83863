"""Maximize sum (i - 1) gamma_i over admissible gamma profiles.

Two constraint sets are supported. ``relaxed`` only asks that the tail from m
on is nonincreasing and vanishes from ``vanish_index`` on; its optimum is a
constant rational plateau. ``tight`` additionally caps every tail value by the
envelope Hilbert function and works over the integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import accumulate

from .errors import InfeasibleError, InvalidInput
from .gamma import (
    RELAXED,
    TIGHT,
    CurveInstance,
    GammaProfile,
    gamma_envelope,
    initial_segment,
    tail_mass,
    vanish_index,
)

MODES = (RELAXED, TIGHT)


@dataclass(frozen=True)
class OptimizationResult:
    mode: str
    chosen_m: int
    profile: GammaProfile
    objective: Fraction
    window: tuple[int, int]
    infeasible_m: tuple[int, ...] = ()
    objectives: dict = field(default_factory=dict, compare=False)

    @property
    def genus_bound(self) -> Fraction:
        return self.objective + 1


def envelope_caps(inst: CurveInstance, m: int) -> list[int]:
    """Effective caps on gamma_m .. gamma_{vanish-1}.

    Running minimum of the envelope, since a nonincreasing tail can never
    exceed an earlier cap.
    """
    s = inst.surface
    raw = [gamma_envelope(s, m, i) for i in range(m, vanish_index(s, m))]
    return list(accumulate(raw, min))


def fill_tail(caps, mass: int) -> list[int]:
    """Nonincreasing integer tail under ``caps`` with the given total, pushed right.

    Every position is filled to a common level c (or its cap, if lower); the
    leftover goes one unit each to the leftmost positions still below their
    cap, which keeps the sequence nonincreasing. ``caps`` must be
    nonincreasing.
    """
    if mass < 0:
        raise InfeasibleError(f"negative tail mass {mass}")
    if mass > sum(caps):
        raise InfeasibleError(f"tail mass {mass} exceeds envelope capacity {sum(caps)}")
    if not caps:
        return []
    lo, hi = 0, max(caps)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if sum(min(c, mid) for c in caps) <= mass:
            lo = mid
        else:
            hi = mid - 1
    vals = [min(c, lo) for c in caps]
    rest = mass - sum(vals)
    for j, c in enumerate(caps):
        if rest == 0:
            break
        if c > lo:
            vals[j] += 1
            rest -= 1
    return vals


def brute_force_tail_objective(caps, mass: int, start: int):
    """Exhaustive max of sum (i - 1) v_i over nonincreasing integer tails.

    ``v`` starts at index ``start``, respects ``caps`` pointwise and sums to
    ``mass``. Returns None when no such tail exists.
    """
    best = None

    def rec(j, prev, left, acc):
        nonlocal best
        if j == len(caps):
            if left == 0 and (best is None or acc > best):
                best = acc
            return
        for v in range(min(prev, caps[j], left), -1, -1):
            rec(j + 1, v, left - v, acc + (start + j - 1) * v)

    rec(0, mass, mass, 0)
    return best


def _check_m(inst: CurveInstance, m: int, mode: str):
    if m < inst.m0:
        raise InfeasibleError(
            f"m={m} is below the Bezout minimum m0={inst.m0}",
            smallest_feasible_m(inst, mode),
        )


def relaxed_profile(inst: CurveInstance, m: int) -> GammaProfile:
    _check_m(inst, m, RELAXED)
    s = inst.surface
    init = initial_segment(s, m)
    try:
        mass = tail_mass(inst, m)
    except InfeasibleError as exc:
        raise InfeasibleError(str(exc), smallest_feasible_m(inst, RELAXED)) from None
    width = s.plateau_width
    if width == 0:
        if mass:
            raise InfeasibleError(
                f"plateau width is 0 (all degrees 1) but tail mass is {mass}",
                smallest_feasible_m(inst, RELAXED),
            )
        plateau = []
    else:
        plateau = [Fraction(mass, width)] * width
    values = tuple(Fraction(v) for v in init) + tuple(plateau)
    return GammaProfile(values, m, RELAXED)


def tight_profile(inst: CurveInstance, m: int) -> GammaProfile:
    _check_m(inst, m, TIGHT)
    s = inst.surface
    init = initial_segment(s, m)
    caps = envelope_caps(inst, m)
    try:
        mass = tail_mass(inst, m)
        tail = fill_tail(caps, mass)
    except InfeasibleError as exc:
        raise InfeasibleError(f"m={m}: {exc}", smallest_feasible_m(inst, TIGHT)) from None
    values = tuple(Fraction(v) for v in init + tail)
    return GammaProfile(values, m, TIGHT, meta={"caps": tuple(caps)})


PROFILE_BUILDERS = {RELAXED: relaxed_profile, TIGHT: tight_profile}


def search_window(inst: CurveInstance, mode: str) -> tuple[int, int]:
    """Inclusive range of m examined by :func:`genus_bound_opt`."""
    if mode == RELAXED:
        return inst.m0, inst.m0
    return inst.m0, inst.m0 + inst.surface.sigma_k


def smallest_feasible_m(inst: CurveInstance, mode: str):
    lo, hi = search_window(inst, TIGHT)
    build = PROFILE_BUILDERS[mode]
    for m in range(lo, hi + 1):
        try:
            _build_quiet(build, inst, m)
        except InfeasibleError:
            continue
        return m
    return None


def _build_quiet(build, inst, m):
    # feasibility probe without recursing into smallest_feasible_m
    s = inst.surface
    mass = inst.d - sum(initial_segment(s, m))
    if mass < 0:
        raise InfeasibleError("negative tail")
    if build is tight_profile:
        fill_tail(envelope_caps(inst, m), mass)
    elif s.plateau_width == 0 and mass:
        raise InfeasibleError("zero-width plateau")


def genus_bound_opt(inst: CurveInstance, mode: str = RELAXED) -> OptimizationResult:
    """Best profile over the search window, ties going to the smallest m."""
    if mode not in MODES:
        raise InvalidInput(f"unknown mode {mode!r}")
    lo, hi = search_window(inst, mode)
    build = PROFILE_BUILDERS[mode]
    best = None
    infeasible = []
    objectives = {}
    for m in range(lo, hi + 1):
        try:
            prof = build(inst, m)
        except InfeasibleError:
            infeasible.append(m)
            continue
        obj = prof.objective()
        objectives[m] = obj
        if best is None or obj > best.objective():
            best = prof
    if best is None:
        raise InfeasibleError(
            f"no feasible m in [{lo}, {hi}] for d={inst.d} on degrees {inst.surface.degrees}"
        )
    return OptimizationResult(
        mode=mode,
        chosen_m=best.m,
        profile=best,
        objective=best.objective(),
        window=(lo, hi),
        infeasible_m=tuple(infeasible),
        objectives=objectives,
    )


def validate_profile(profile: GammaProfile, inst: CurveInstance) -> list[str]:
    """Constraint violations of ``profile`` for its mode; empty when admissible."""
    s = inst.surface
    m = profile.m
    bad = []
    if profile.total != inst.d:
        bad.append(f"sum {profile.total} != d={inst.d}")
    if any(v < 0 for v in profile.values):
        bad.append("negative value")
    init = initial_segment(s, m)
    if [profile[i] for i in range(m)] != init:
        bad.append("initial segment differs from the complete intersection values")
    end = vanish_index(s, m)
    tail = [profile[i] for i in range(m, end)]
    if any(b > a for a, b in zip(tail, tail[1:])):
        bad.append("tail is not nonincreasing")
    if profile.support_end > end:
        bad.append(f"nonzero value at or beyond vanish index {end}")
    if profile.mode == TIGHT:
        if any(v.denominator != 1 for v in profile.values):
            bad.append("non-integer value in tight profile")
        for i in range(m, end):
            if profile[i] > gamma_envelope(s, m, i):
                bad.append(f"gamma_{i} exceeds envelope")
    return bad
