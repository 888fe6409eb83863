from math import comb, prod

import pytest
from hypothesis import given, strategies as st

from cigenus.errors import InvalidInput, ResourceError
from cigenus.exactnum import binom_trunc
from cigenus.hilbert import (
    AS_WRITTEN,
    IdealSpec,
    ideal_slice_dim,
    quotient_hf,
    quotient_hf_monomial_oracle,
    quotient_hf_series_oracle,
    signed_partial_sums,
)


def brute_count(ambient, degrees, level):
    """Full enumeration of exponent vectors, kept tiny."""
    nv = ambient + 1

    def rec(j, left):
        if j == nv - 1:
            return int(j >= len(degrees) or left < degrees[j])
        top = left if j >= len(degrees) else min(left, degrees[j] - 1)
        return sum(rec(j + 1, left - e) for e in range(top + 1))

    return rec(0, level)


def test_ideal_spec_canonical_and_validated():
    assert IdealSpec(2, (5, 2, 2)).gen_degrees == (2, 2, 5)
    with pytest.raises(InvalidInput):
        IdealSpec(1, (1, 1, 1))
    with pytest.raises(InvalidInput):
        IdealSpec(2, (0,))


def test_signed_partial_sums_shape():
    entries = signed_partial_sums((2, 3, 5))
    assert len(entries) == 7
    assert sum(s for _, s in entries) == 1
    assert sorted(entries) == sorted(
        [(2, 1), (3, 1), (5, 1), (5, -1), (7, -1), (8, -1), (10, 1)]
    )


@pytest.mark.parametrize(
    "ambient, degrees, level, expected",
    [
        (2, (2,), 3, 3),  # x0^3, x0^2 x1, x0^2 x2
        (2, (2, 2), 4, 11),  # 15 monomials minus 4 avoiding x0^2 and x1^2
        (3, (1, 2), 0, 0),
    ],
)
def test_ideal_slice_dim_examples(ambient, degrees, level, expected):
    ideal = IdealSpec(ambient, degrees)
    assert brute_count(ambient, degrees, level) == binom_trunc(level + ambient, ambient) - expected
    assert ideal_slice_dim(ideal, level) == expected


def test_quotient_hf_examples():
    ideal = IdealSpec(2, (2, 2))
    assert [quotient_hf(ideal, lvl) for lvl in range(5)] == [1, 3, 4, 4, 4]
    assert [brute_count(2, (2, 2), lvl) for lvl in range(5)] == [1, 3, 4, 4, 4]
    assert quotient_hf(IdealSpec(2), 5) == comb(7, 2) == 21
    artinian = IdealSpec(2, (2, 2, 5))
    assert artinian.socle_degree == 6
    assert quotient_hf(artinian, 6) == 1
    assert all(quotient_hf(artinian, lvl) == 0 for lvl in range(7, 25))


def test_series_oracle_examples():
    assert quotient_hf_series_oracle(IdealSpec(2, (2, 2)), 4) == [1, 3, 4, 4, 4]
    assert quotient_hf_series_oracle(IdealSpec(0, (1,)), 5) == [1, 0, 0, 0, 0, 0]
    assert quotient_hf_series_oracle(IdealSpec(3), 2) == [1, 4, 10]


def test_monomial_oracle_examples():
    assert quotient_hf_monomial_oracle(IdealSpec(2, (2, 2)), 4) == 4
    assert quotient_hf_monomial_oracle(IdealSpec(1, (3,)), 2) == 3
    assert quotient_hf_monomial_oracle(IdealSpec(2, (1,)), 0) == 1


def test_monomial_oracle_budget():
    with pytest.raises(ResourceError):
        quotient_hf_monomial_oracle(IdealSpec(5, (2,)), 200)
    with pytest.raises(ResourceError):
        quotient_hf_monomial_oracle(IdealSpec(2, (2,)), 10, budget=10)


def test_monomial_oracle_matches_full_enumeration():
    for amb in range(4):
        for degs in [(), (1,), (2, 3), (2, 2, 2)][: amb + 2]:
            if len(degs) > amb + 1:
                continue
            for lvl in range(9):
                assert quotient_hf_monomial_oracle(IdealSpec(amb, degs), lvl) == brute_count(amb, degs, lvl)


def test_as_written_sign_flips_single_generator():
    ideal = IdealSpec(2, (2,))
    assert ideal_slice_dim(ideal, 3, AS_WRITTEN) == -3


ideals = st.integers(0, 5).flatmap(
    lambda amb: st.tuples(
        st.just(amb),
        st.lists(st.integers(1, 4), max_size=amb + 1),
    )
)


@given(ideals, st.integers(0, 20))
def test_triple_agreement_property(spec, level):
    amb, degs = spec
    ideal = IdealSpec(amb, tuple(degs))
    hf = quotient_hf(ideal, level)
    assert hf == quotient_hf_series_oracle(ideal, level)[level]
    assert hf == quotient_hf_monomial_oracle(ideal, level)
    assert ideal_slice_dim(ideal, level) + hf == binom_trunc(level + amb, amb)


@given(st.integers(1, 5).flatmap(lambda amb: st.lists(st.integers(1, 4), min_size=amb, max_size=amb)))
def test_zero_dimensional_stabilizes_at_degree_product(degs):
    ideal = IdealSpec(len(degs), tuple(degs))
    vals = [quotient_hf(ideal, lvl) for lvl in range(25)]
    assert all(a <= b for a, b in zip(vals, vals[1:]))
    assert vals[-1] == prod(degs)


@given(st.integers(0, 5).flatmap(lambda amb: st.lists(st.integers(1, 4), min_size=amb + 1, max_size=amb + 1)))
def test_artinian_vanishing_and_symmetry(degs):
    ideal = IdealSpec(len(degs) - 1, tuple(degs))
    top = ideal.socle_degree
    assert quotient_hf(ideal, top + 1) == 0
    assert all(quotient_hf(ideal, lvl) == quotient_hf(ideal, top - lvl) for lvl in range(top + 1))
    assert sum(quotient_hf(ideal, lvl) for lvl in range(top + 1)) == prod(degs)


def test_negative_level_is_zero():
    assert quotient_hf(IdealSpec(2, (2,)), -1) == 0
