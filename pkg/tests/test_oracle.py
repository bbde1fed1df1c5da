from math import comb

import numpy as np
import pytest

from lefschetz import (
    DenseMatrixModP,
    LinearSystem,
    PowerSequence,
    PrimeFieldConfig,
    matrix_rank_mod_p,
    monomial_basis,
    oracle_linsys_dim,
    oracle_map_rank,
    oracle_quotient_dim,
    prime_independent,
)
from lefschetz.oracle import ConfigError, _power_coeffs, is_prime, oracle_profile
from conftest import SECOND_PRIME

P = PowerSequence


def test_monomial_basis():
    assert monomial_basis(0) == ((0, 0, 0),)
    assert len(monomial_basis(1)) == 3
    assert monomial_basis(2) == ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))
    for j in range(12):
        basis = monomial_basis(j)
        assert len(basis) == comb(j + 2, 2) == len(set(basis))
        assert all(sum(e) == j for e in basis)


@pytest.mark.parametrize(
    "rows, rank",
    [(np.eye(3, dtype=np.int64), 3), (np.zeros((4, 7), dtype=np.int64), 0), ([[1, 2], [2, 4]], 1)],
)
def test_matrix_rank_examples(rows, rank):
    assert matrix_rank_mod_p(DenseMatrixModP(np.asarray(rows), 2147483647)) == rank


def _rank_exact(rows, p):
    """Fraction-free elimination on Python integers, reducing mod p."""
    m = [[int(x) % p for x in row] for row in rows]
    rank, cols = 0, len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, p)
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c] * inv % p
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


@pytest.mark.parametrize("prime", [101, 1000003, 2147483647])
def test_matrix_rank_against_pure_python(prime):
    rng = np.random.default_rng(prime)
    for _ in range(25):
        r, c, k = (int(x) for x in rng.integers(1, 30, size=3))
        left = rng.integers(0, prime, (r, k)).tolist()
        right = rng.integers(0, prime, (k, c)).tolist()
        # rank at most k, computed with Python integers to avoid overflow
        m = [[sum(x * y for x, y in zip(row, col)) % prime for col in zip(*right)] for row in left]
        arr = np.array(m, dtype=np.int64)
        assert matrix_rank_mod_p(arr, prime) == _rank_exact(m, prime) <= min(r, c, k)


def test_power_coeffs_are_multinomial_expansion():
    p = 1000003
    form = np.array([2, 3, 5])
    coeffs = _power_coeffs(form, 3, p)
    # evaluate (2x+3y+5z)^3 at (1,1,1) = 10^3 and at (1,2,0) = 8^3
    basis = monomial_basis(3)
    for pt, val in [((1, 1, 1), 1000), ((1, 2, 0), 512)]:
        s = sum(int(c) * pt[0] ** e[0] * pt[1] ** e[1] * pt[2] ** e[2] for c, e in zip(coeffs, basis))
        assert s % p == val


@pytest.mark.parametrize(
    "powers, j, shift, dim",
    [((2, 2, 2, 2), 2, None, 2), ((3, 3, 3), 3, None, 7), ((5, 6, 6, 6, 6, 6), 6, 2, 5)],
)
def test_oracle_quotient_dim(powers, j, shift, dim, cfg):
    assert oracle_quotient_dim(P(powers), j, shift, cfg) == dim


@pytest.mark.parametrize(
    "sys, dim",
    [(LinearSystem(2, [1, 1, 1, 1]), 2), (LinearSystem(1, [1, 1, 1, 1, 1]), 0), (LinearSystem(5, [3, 2, 2]), 9)],
)
def test_oracle_linsys_dim(sys, dim, cfg):
    assert oracle_linsys_dim(sys, cfg) == dim


def test_oracle_map_rank(cfg):
    assert oracle_map_rank(P([3, 3, 3]), 2, 3, cfg) == 3
    assert oracle_map_rank(P([2, 2, 2, 2, 2]), 2, 2, cfg) == 1
    # dim A_4 = 0 for three squares
    assert oracle_map_rank(P([2, 2, 2]), 1, 4, cfg) == 0


def test_trial_monotonicity():
    ps, j = P([3, 4, 4, 5, 5]), 6
    dims = [oracle_quotient_dim(ps, j, 2, PrimeFieldConfig(prime=101, trials=t, seed=5)) for t in (1, 2, 4, 8)]
    assert dims == sorted(dims, reverse=True)


def test_determinism(cfg):
    ps = P([4, 4, 5, 6, 6])
    a = oracle_profile(ps, (1, 2), cfg)
    b = oracle_profile(ps, (1, 2), cfg)
    assert a == b


def test_profile_matches_single_degree_calls(cfg):
    ps = P([3, 4, 4, 5, 6])
    prof = oracle_profile(ps, (1, 2), cfg)
    for j, d in enumerate(prof.hilbert):
        assert oracle_quotient_dim(ps, j, None, cfg) == d
        assert oracle_quotient_dim(ps, j, 2, cfg) == prof.quotients[2][j]
        if j >= 2:
            assert oracle_map_rank(ps, 2, j, cfg) == prof.ranks[2][j]


def test_prime_independence_on_fixtures(cfg):
    for powers, j, shift in [((2, 2, 2, 2), 2, None), ((5, 6, 6, 6, 6, 6), 6, 2), ((4, 4, 5, 6), 7, 2)]:
        ps = P(powers)
        value, flagged = prime_independent(lambda c: oracle_quotient_dim(ps, j, shift, c), cfg, (SECOND_PRIME, 998244353))
        assert not flagged
        assert value == oracle_quotient_dim(ps, j, shift, PrimeFieldConfig(prime=SECOND_PRIME, seed=cfg.seed))


def test_prime_independent_flags_disagreement():
    calls = {2147483647: 1, 1000003: 2, 998244353: 2}
    value, flagged = prime_independent(lambda c: calls[c.prime], PrimeFieldConfig())
    assert flagged and value == 2


def test_config_validation(monkeypatch):
    with pytest.raises(ConfigError):
        PrimeFieldConfig(prime=100)
    with pytest.raises(ConfigError):
        PrimeFieldConfig(prime=2**61 - 1)
    with pytest.raises(ConfigError):
        PrimeFieldConfig(trials=0)
    with pytest.raises(ConfigError):
        oracle_quotient_dim(P([2, 2, 2]), 11, None, PrimeFieldConfig(prime=11))
    monkeypatch.setenv("LEFSCHETZ_PRIME", "1000003")
    monkeypatch.setenv("LEFSCHETZ_SEED", "9")
    assert PrimeFieldConfig.from_env() == PrimeFieldConfig(prime=1000003, seed=9)
    assert PrimeFieldConfig.from_env(prime=101, seed=1).prime == 101


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(2147483647) and is_prime(1000003) and not is_prime(1000001)
