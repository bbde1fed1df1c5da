from itertools import combinations_with_replacement

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lefschetz import (
    ContractError,
    LinearSystem,
    PowerSequence,
    QuotientQuery,
    apply_duality,
    ci_hilbert_function,
    hilbert_function,
    oracle_quotient_dim,
    quotient_dim,
)

P = PowerSequence


@pytest.mark.parametrize(
    "powers, j, system",
    [
        ((2, 2, 2, 2), 2, LinearSystem(2, [1, 1, 1, 1])),
        ((5, 6, 6, 6, 6, 6), 6, LinearSystem(6, [2, 1, 1, 1, 1, 1])),
        ((3,), 3, LinearSystem(3, [1])),
    ],
)
def test_apply_duality(powers, j, system):
    assert apply_duality(P(powers), j) == system


def test_apply_duality_needs_large_degree():
    with pytest.raises(ContractError):
        apply_duality(P([2, 5]), 4)


# oracle-confirmed values (see test_quotient_dim_matches_oracle_on_fixtures)
QUOTIENT_FIXTURES = [
    ((5, 6, 6, 6, 6, 6), 4, None, 15),
    ((5, 6, 6, 6, 6, 6), 6, None, 20),
    ((5, 6, 6, 6, 6, 6), 6, 2, 5),
    ((2, 2, 2, 2), 2, None, 2),
    ((3, 3, 3), 3, None, 7),
    ((3, 3, 3), 3, 2, 4),
]


@pytest.mark.parametrize("powers, j, shift, dim", QUOTIENT_FIXTURES)
def test_quotient_dim_fixtures(powers, j, shift, dim):
    assert quotient_dim(QuotientQuery(P(powers), j, shift)).dim == dim


@pytest.mark.parametrize("powers, j, shift, dim", QUOTIENT_FIXTURES)
def test_quotient_dim_matches_oracle_on_fixtures(powers, j, shift, dim, cfg):
    assert oracle_quotient_dim(P(powers), j, shift, cfg) == dim


def test_shift_larger_than_degree_imposes_nothing():
    ps = P([4, 4, 4])
    assert quotient_dim(QuotientQuery(ps, 3, 5)).dim == quotient_dim(QuotientQuery(ps, 3)).dim == 10


def test_query_validation():
    with pytest.raises(ContractError):
        QuotientQuery(P([2, 2, 2]), -1)
    with pytest.raises(ContractError):
        QuotientQuery(P([2, 2, 2]), 3, 0)


@pytest.mark.parametrize(
    "powers, hf",
    [
        ((3, 3, 3), [1, 3, 6, 7, 6, 3, 1]),
        ((5, 6, 6, 6, 6, 6), [1, 3, 6, 10, 15, 20, 20, 15, 5]),
        ((1, 1, 1), [1]),
    ],
)
def test_hilbert_function(powers, hf):
    assert hilbert_function(P(powers)) == hf


def test_hilbert_function_rejects_non_artinian():
    with pytest.raises(ContractError, match="non-artinian"):
        hilbert_function(P([2, 3]))


@pytest.mark.parametrize(
    "powers, hf",
    [((3, 3, 3), [1, 3, 6, 7, 6, 3, 1]), ((2, 2, 2), [1, 3, 3, 1]), ((1, 2, 3), [1, 2, 2, 1])],
)
def test_ci_hilbert_function(powers, hf):
    assert ci_hilbert_function(P(powers)) == hf


def test_ci_hilbert_function_non_artinian_truncates():
    assert ci_hilbert_function(P([2]), length=5) == [1, 3, 5, 7, 9]
    assert ci_hilbert_function(P([1, 1]), length=4) == [1, 1, 1, 1]
    assert ci_hilbert_function(P([2, 3]), length=6) == [1, 3, 5, 6, 6, 6]
    with pytest.raises(ContractError):
        ci_hilbert_function(P([2, 3]))
    with pytest.raises(ContractError):
        ci_hilbert_function(P([2, 2, 2, 2]))


def test_non_artinian_ci_matches_quotient_dim():
    for powers in [(2,), (3, 4), (1, 5)]:
        ps = P(powers)
        assert ci_hilbert_function(ps, length=9) == [quotient_dim(QuotientQuery(ps, j)).dim for j in range(9)]


def test_hilbert_matches_complete_intersection_formula():
    for triple in combinations_with_replacement(range(1, 7), 3):
        assert hilbert_function(P(triple)) == ci_hilbert_function(P(triple))


def test_duality_identity_against_oracle(cfg):
    rng = np.random.default_rng(3)
    for _ in range(60):
        ps = P(rng.integers(1, 13, size=int(rng.integers(5, 11))).tolist())
        j = int(rng.integers(max(ps), max(ps) + 5))
        d = quotient_dim(QuotientQuery(ps, j)).dim
        assert d == oracle_quotient_dim(ps, j, None, cfg), (ps, j)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(1, 12), min_size=1, max_size=10), st.integers(0, 20), st.sampled_from([None, 1, 2, 3]))
def test_generator_drop_identity(powers, j, shift):
    ps = P(powers)
    kept = [a for a in ps if a <= j]
    full = quotient_dim(QuotientQuery(ps, j, shift)).dim
    if kept:
        assert full == quotient_dim(QuotientQuery(P(kept), j, shift)).dim
    elif shift is None or shift > j:
        assert full == (j + 2) * (j + 1) // 2


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(1, 12), min_size=3, max_size=10), st.randoms(use_true_random=False))
def test_hilbert_function_unimodal_and_permutation_invariant(powers, rnd):
    hf = hilbert_function(P(powers))
    assert None not in hf
    for i in range(1, len(hf) - 1):
        assert not (hf[i] < hf[i - 1] and hf[i] < hf[i + 1]), hf
    shuffled = list(powers)
    rnd.shuffle(shuffled)
    assert hilbert_function(P(shuffled)) == hf
