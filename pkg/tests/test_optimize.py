from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cigenus.bounds import closed_form_bound
from cigenus.errors import InfeasibleError, InvalidInput
from cigenus.gamma import CurveInstance, SurfaceSpec
from cigenus.optimize import (
    brute_force_tail_objective,
    fill_tail,
    genus_bound_opt,
    relaxed_profile,
    tight_profile,
    validate_profile,
)

F = Fraction


def tail(prof):
    return [prof[i] for i in range(prof.m, prof.support_end)]


def test_relaxed_profile_examples(quartic_pair):
    p = relaxed_profile(CurveInstance(quartic_pair, 20), 5)
    assert p.values == tuple(map(F, (1, 3, 4, 4, 4, 2, 2)))
    assert p.total == 20
    p = relaxed_profile(CurveInstance(quartic_pair, 18), 5)
    assert p.values[5:] == (F(1), F(1))
    p = relaxed_profile(CurveInstance(quartic_pair, 16), 4)
    assert p.values == tuple(map(F, (1, 3, 4, 4, 2, 2)))


def test_relaxed_plateau_can_be_fractional(quartic_pair):
    p = relaxed_profile(CurveInstance(quartic_pair, 17), 5)
    assert p.values[5:] == (F(1, 2), F(1, 2))


def test_tight_profile_examples(quartic_pair):
    assert tail(tight_profile(CurveInstance(quartic_pair, 20), 5)) == [3, 1]
    assert tail(tight_profile(CurveInstance(quartic_pair, 18), 5)) == [1, 1]
    assert tail(tight_profile(CurveInstance(quartic_pair, 16), 4)) == [3, 1]


def test_profile_below_m0_names_smallest_feasible(quartic_pair):
    with pytest.raises(InfeasibleError) as exc:
        tight_profile(CurveInstance(quartic_pair, 20), 4)
    assert exc.value.smallest_feasible_m == 5
    with pytest.raises(InfeasibleError):
        relaxed_profile(CurveInstance(quartic_pair, 20), 3)


@pytest.mark.parametrize(
    "d, mode, expected",
    [(20, "relaxed", 42), (20, "tight", 41), (18, "relaxed", 33)],
)
def test_genus_bound_opt_examples(quartic_pair, d, mode, expected):
    res = genus_bound_opt(CurveInstance(quartic_pair, d), mode)
    assert res.genus_bound == expected
    assert res.genus_bound == res.objective + 1
    assert res.chosen_m == 5


def test_search_windows(anchor):
    assert genus_bound_opt(anchor, "relaxed").window == (5, 5)
    res = genus_bound_opt(anchor, "tight")
    assert res.window == (5, 9)
    assert max(res.objectives.values()) == res.objective


def test_unknown_mode(anchor):
    with pytest.raises(InvalidInput):
        genus_bound_opt(anchor, "loose")


def test_all_degree_one_surface_is_a_plane():
    # plane curves: (d-1)(d-2)/2
    for n in (3, 4, 5):
        inst = CurveInstance.make(n, (1,) * (n - 2), 9)
        res = genus_bound_opt(inst, "relaxed")
        assert res.genus_bound == 28 == closed_form_bound(inst)
        assert genus_bound_opt(inst, "tight").genus_bound == 28


caps_strategy = st.lists(st.integers(0, 5), min_size=0, max_size=5).map(lambda c: sorted(c, reverse=True))


@given(caps_strategy, st.integers(0, 12), st.integers(0, 10))
def test_fill_tail_is_optimal(caps, mass, start):
    best = brute_force_tail_objective(caps, mass, start)
    if best is None:
        with pytest.raises(InfeasibleError):
            fill_tail(caps, mass)
        return
    vals = fill_tail(caps, mass)
    assert sum(vals) == mass
    assert all(0 <= v <= c for v, c in zip(vals, caps))
    assert all(a >= b for a, b in zip(vals, vals[1:]))
    assert sum((start + j - 1) * v for j, v in enumerate(vals)) == best


def test_brute_force_tail_small_cases():
    assert brute_force_tail_objective([3, 1], 4, 5) == 4 * 3 + 5 * 1
    assert brute_force_tail_objective([3, 1], 2, 5) == 4 + 5
    assert brute_force_tail_objective([3, 1], 5, 5) is None


instances = st.integers(3, 5).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.integers(1, 4), min_size=n - 2, max_size=n - 2),
        st.integers(0, 40),
    )
)


@given(instances)
def test_profiles_admissible_and_dominated(spec):
    n, ks, extra = spec
    s = SurfaceSpec(n, tuple(ks))
    inst = CurveInstance(s, s.threshold + extra)
    relaxed = genus_bound_opt(inst, "relaxed")
    tight = genus_bound_opt(inst, "tight")
    assert validate_profile(relaxed.profile, inst) == []
    assert validate_profile(tight.profile, inst) == []
    assert tight.genus_bound <= relaxed.genus_bound
    assert relaxed.genus_bound == closed_form_bound(inst)
