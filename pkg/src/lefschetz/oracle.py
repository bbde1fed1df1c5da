"""Brute-force ground truth over a large prime field.

Graded ideal dimensions come from Macaulay matrices of random linear
forms; fat-point system dimensions come from derivative-condition
matrices at random points. Ranks are computed by Gaussian elimination on
int64 arrays, which is exact as long as the prime is below 2**31.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from functools import lru_cache
from math import comb, factorial

import numpy as np

from lefschetz.combinatorics import ContractError, LinearSystem, PowerSequence

DEFAULT_PRIME = 2147483647
MAX_PRIME = 2**31


class ConfigError(ValueError):
    pass


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeFieldConfig:
    prime: int = DEFAULT_PRIME
    trials: int = 3
    seed: int = 0

    def __post_init__(self):
        if not is_prime(self.prime):
            raise ConfigError(f"{self.prime} is not prime")
        if self.prime >= MAX_PRIME:
            raise ConfigError(f"prime must be below 2**31 for exact int64 arithmetic, got {self.prime}")
        if self.trials < 1:
            raise ConfigError(f"trials must be positive, got {self.trials}")

    @classmethod
    def from_env(cls, prime: int | None = None, trials: int | None = None, seed: int | None = None):
        """Flags win over LEFSCHETZ_PRIME / LEFSCHETZ_SEED, which win over defaults."""
        if prime is None:
            prime = int(os.environ.get("LEFSCHETZ_PRIME", DEFAULT_PRIME))
        if seed is None:
            seed = int(os.environ.get("LEFSCHETZ_SEED", 0))
        return cls(prime=prime, trials=3 if trials is None else trials, seed=seed)

    def require_above(self, degree: int) -> None:
        if self.prime <= degree:
            raise ConfigError(f"prime {self.prime} must exceed degree {degree}")

    def rng(self, trial: int) -> np.random.Generator:
        # per-trial stream: seed xor trial index
        return np.random.default_rng((self.seed ^ trial) & 0xFFFFFFFFFFFFFFFF)


@dataclass(frozen=True)
class DenseMatrixModP:
    entries: np.ndarray
    prime: int

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=np.int64)
        if arr.ndim != 2:
            arr = arr.reshape(-1, arr.shape[-1] if arr.ndim else 0)
        object.__setattr__(self, "entries", arr % self.prime)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]


# --- monomials -------------------------------------------------------------


@lru_cache(maxsize=None)
def monomial_basis(j: int) -> tuple[tuple[int, int, int], ...]:
    """Degree-j monomials of K[x,y,z] in graded lex order (x > y > z)."""
    if j < 0:
        raise ContractError(f"degree must be >= 0, got {j}")
    return tuple((ex, ey, j - ex - ey) for ex in range(j, -1, -1) for ey in range(j - ex, -1, -1))


@lru_cache(maxsize=None)
def _exponents(j: int) -> np.ndarray:
    return np.array(monomial_basis(j), dtype=np.int64).reshape(-1, 3)


def _index(e: np.ndarray, j: int) -> np.ndarray:
    # position of (ex, ey, ez) in monomial_basis(j)
    ex, ey = e[..., 0], e[..., 1]
    before = (j - ex) * (j - ex + 1) // 2
    return before + (j - ex - ey)


@lru_cache(maxsize=None)
def _product_table(d1: int, d2: int) -> np.ndarray:
    """table[u, v] = index of monomial_basis(d1)[u] * monomial_basis(d2)[v]."""
    s = _exponents(d1)[:, None, :] + _exponents(d2)[None, :, :]
    return _index(s, d1 + d2)


@lru_cache(maxsize=None)
def _multinomials(a: int) -> tuple[int, ...]:
    fa = factorial(a)
    return tuple(fa // (factorial(e[0]) * factorial(e[1]) * factorial(e[2])) for e in monomial_basis(a))


def _power_coeffs(form: np.ndarray, a: int, p: int) -> np.ndarray:
    """Coefficients of (c0 x + c1 y + c2 z)^a in monomial_basis(a), mod p."""
    c = [int(v) % p for v in form]
    pw = [[pow(ci, k, p) for k in range(a + 1)] for ci in c]
    out = [
        m % p * pw[0][e[0]] % p * pw[1][e[1]] % p * pw[2][e[2]] % p
        for m, e in zip(_multinomials(a), monomial_basis(a))
    ]
    return np.array(out, dtype=np.int64)


def _multiples(coeffs: np.ndarray, a: int, j: int) -> np.ndarray:
    """Rows {monomial of degree j - a} * f for f of degree a, in degree j."""
    table = _product_table(j - a, a)
    rows = np.zeros((table.shape[0], comb(j + 2, 2)), dtype=np.int64)
    rows[np.arange(table.shape[0])[:, None], table] = coeffs[None, :]
    return rows


# --- elimination -----------------------------------------------------------


class _Echelon:
    """Row-echelon basis over F_p that grows as rows are added."""

    def __init__(self, ncols: int, p: int):
        self.p = p
        self.ncols = ncols
        self.basis = np.zeros((0, ncols), dtype=np.int64)
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def full(self) -> bool:
        return self.rank == self.ncols

    def copy(self) -> "_Echelon":
        other = _Echelon(self.ncols, self.p)
        other.basis = self.basis.copy()
        other.pivots = list(self.pivots)
        return other

    def add(self, rows: np.ndarray, chunk: int = 256) -> None:
        for start in range(0, rows.shape[0], chunk):
            if self.full:
                return
            self._add_chunk(rows[start:start + chunk] % self.p)

    def _add_chunk(self, m: np.ndarray) -> None:
        p = self.p
        m = m.copy()
        for row, c in zip(self.basis, self.pivots):
            f = m[:, c]
            nz = np.flatnonzero(f)
            if nz.size:
                m[nz] = (m[nz] - f[nz, None] * row % p) % p
        new_rows = []
        new_pivots = []
        r = 0
        nrows = m.shape[0]
        for c in range(self.ncols):
            if r == nrows:
                break
            nz = np.flatnonzero(m[r:, c])
            if nz.size == 0:
                continue
            piv = r + nz[0]
            if piv != r:
                m[[r, piv]] = m[[piv, r]]
            m[r] = m[r] * pow(int(m[r, c]), p - 2, p) % p
            below = r + 1 + np.flatnonzero(m[r + 1:, c])
            if below.size:
                m[below] = (m[below] - m[below, c, None] * m[r] % p) % p
            new_rows.append(m[r])
            new_pivots.append(c)
            r += 1
        if new_rows:
            self.basis = np.vstack([self.basis, np.array(new_rows)])
            self.pivots.extend(new_pivots)


def matrix_rank_mod_p(m: DenseMatrixModP | np.ndarray, prime: int | None = None) -> int:
    if not isinstance(m, DenseMatrixModP):
        if prime is None:
            raise ContractError("a raw array needs an explicit prime")
        m = DenseMatrixModP(np.asarray(m), prime)
    if m.rows == 0 or m.cols == 0:
        return 0
    ech = _Echelon(m.cols, m.prime)
    ech.add(m.entries)
    return ech.rank


# --- Macaulay matrices -----------------------------------------------------


def _random_forms(rng: np.random.Generator, count: int, p: int) -> np.ndarray:
    return rng.integers(0, p, size=(count, 3), dtype=np.int64)


def _ideal_echelon(gens: list[tuple[np.ndarray, int]], j: int, p: int) -> _Echelon:
    """Echelon basis of the degree-j piece of the ideal (f^a for (f, a) in gens)."""
    ech = _Echelon(comb(j + 2, 2), p)
    for form, a in gens:
        if a <= j and not ech.full:
            ech.add(_multiples(_power_coeffs(form, a, p), a, j))
    return ech


def _trial_dims(powers: PowerSequence, j: int, shifts: tuple[int, ...], p: int, rng) -> tuple[int, dict[int, int]]:
    """(dim A_j, {k: dim [A/L^k A]_j}) for one draw of forms."""
    forms = _random_forms(rng, powers.r + 1, p)
    gens = list(zip(forms[:-1], powers))
    ech = _ideal_echelon(gens, j, p)
    total = comb(j + 2, 2)
    quotients = {}
    for k in shifts:
        if k > j or ech.full:
            quotients[k] = total - ech.rank
            continue
        ext = ech.copy()
        ext.add(_multiples(_power_coeffs(forms[-1], k, p), k, j))
        quotients[k] = total - ext.rank
    return total - ech.rank, quotients


def oracle_quotient_dim(powers: PowerSequence, j: int, shift: int | None, cfg: PrimeFieldConfig) -> int:
    """dim [R/(I, L^k)]_j (or [R/I]_j), minimum over random trials."""
    if j < 0:
        raise ContractError(f"degree must be >= 0, got {j}")
    cfg.require_above(j)
    best = None
    for t in range(cfg.trials):
        base, quo = _trial_dims(powers, j, () if shift is None else (shift,), cfg.prime, cfg.rng(t))
        d = base if shift is None else quo[shift]
        best = d if best is None else min(best, d)
    return best


def oracle_map_rank(powers: PowerSequence, k: int, j: int, cfg: PrimeFieldConfig) -> int:
    """Rank of x L^k : A_{j-k} -> A_j, maximum over random trials."""
    if not j >= k >= 1:
        raise ContractError(f"need j >= k >= 1, got j={j}, k={k}")
    cfg.require_above(j)
    best = 0
    for t in range(cfg.trials):
        base, quo = _trial_dims(powers, j, (k,), cfg.prime, cfg.rng(t))
        best = max(best, base - quo[k])
    return best


@dataclass(frozen=True)
class OracleProfile:
    """Per-degree oracle dimensions of A and A/L^k A for several k."""

    hilbert: tuple[int, ...]  # dim A_j for j = 0 .. len - 1 (through the first zero)
    quotients: dict[int, tuple[int, ...]]  # k -> dim [A/L^k A]_j over the same degrees
    ranks: dict[int, tuple[int, ...]]  # k -> rank of x L^k into degree j, max over trials


def oracle_profile(powers: PowerSequence, shifts: tuple[int, ...], cfg: PrimeFieldConfig,
                   max_degree: int | None = None) -> OracleProfile:
    """Scan degrees 0, 1, ... until A vanishes, one draw of forms per trial.

    Once an ideal contains all of R_d it contains R_{d+1}, so the scan stops
    at the first degree where every quotient vanishes.
    """
    cap = sum(powers) if max_degree is None else max_degree
    cfg.require_above(cap)
    per_trial = []
    for t in range(cfg.trials):
        rng = cfg.rng(t)
        forms = _random_forms(rng, powers.r + 1, cfg.prime)
        gens = list(zip(forms[:-1], powers))
        hil: list[int] = []
        quo: dict[int, list[int]] = {k: [] for k in shifts}
        for j in range(cap + 1):
            ech = _ideal_echelon(gens, j, cfg.prime)
            total = comb(j + 2, 2)
            hil.append(total - ech.rank)
            for k in shifts:
                if quo[k] and quo[k][-1] == 0:
                    quo[k].append(0)
                elif k > j or ech.full:
                    quo[k].append(total - ech.rank)
                else:
                    ext = ech.copy()
                    ext.add(_multiples(_power_coeffs(forms[-1], k, cfg.prime), k, j))
                    quo[k].append(total - ext.rank)
            if hil[-1] == 0:
                break
        per_trial.append((hil, quo))
    length = max(len(h) for h, _ in per_trial)

    def pad(seq):
        return list(seq) + [0] * (length - len(seq))

    hilbert = tuple(min(col) for col in zip(*(pad(h) for h, _ in per_trial)))
    quotients = {k: tuple(min(col) for col in zip(*(pad(q[k]) for _, q in per_trial))) for k in shifts}
    ranks = {
        k: tuple(max(col) for col in zip(*([a - b for a, b in zip(pad(h), pad(q[k]))] for h, q in per_trial)))
        for k in shifts
    }
    return OracleProfile(hilbert, quotients, ranks)


# --- fat points ------------------------------------------------------------


@lru_cache(maxsize=None)
def _falling(n_max: int, p: int) -> np.ndarray:
    """ff[n, k] = n (n-1) ... (n-k+1) mod p."""
    ff = np.zeros((n_max + 1, n_max + 1), dtype=np.int64)
    for n in range(n_max + 1):
        acc = 1
        ff[n, 0] = 1
        for k in range(1, n + 1):
            acc = acc * (n - k + 1) % p
            ff[n, k] = acc
    return ff


def _point_conditions(point: np.ndarray, b: int, j: int, p: int) -> np.ndarray:
    """Rows: all order-(b-1) partials of a degree-j form evaluated at ``point``.

    By Euler's relation these vanish iff the form has multiplicity >= b there.
    """
    if b <= 0:
        return np.zeros((0, comb(j + 2, 2)), dtype=np.int64)
    if b - 1 > j:
        # every partial of order b-1 > j vanishes identically; the condition
        # is then that the form itself is zero
        return np.eye(comb(j + 2, 2), dtype=np.int64)
    E = _exponents(j)
    D = _exponents(b - 1)
    ff = _falling(j, p)
    pw = np.ones((3, j + 1), dtype=np.int64)
    for c in range(3):
        for k in range(1, j + 1):
            pw[c, k] = pw[c, k - 1] * int(point[c]) % p
    diff = E[None, :, :] - D[:, None, :]
    ok = (diff >= 0).all(axis=2)
    diff = np.where(diff >= 0, diff, 0)
    val = np.ones(ok.shape, dtype=np.int64)
    for c in range(3):
        val = val * ff[E[None, :, c], D[:, None, c]] % p
        val = val * pw[c][diff[:, :, c]] % p
    return np.where(ok, val, 0)


def oracle_linsys_dim(sys: LinearSystem, cfg: PrimeFieldConfig) -> int:
    """dim L(j; b_1, ..., b_n) at random points, minimum over trials."""
    j = sys.degree
    if j < 0:
        raise ContractError(f"degree must be >= 0, got {j}")
    cfg.require_above(j)
    total = comb(j + 2, 2)
    best = None
    for t in range(cfg.trials):
        rng = cfg.rng(t)
        points = rng.integers(0, cfg.prime, size=(sys.n, 3), dtype=np.int64)
        ech = _Echelon(total, cfg.prime)
        for pt, b in zip(points, sys.mults):
            if ech.full:
                break
            ech.add(_point_conditions(pt, b, j, cfg.prime))
        d = total - ech.rank
        best = d if best is None else min(best, d)
    return best


def prime_independent(compute, cfg: PrimeFieldConfig, alt_primes: tuple[int, int] = (1000003, 998244353)):
    """Evaluate ``compute(cfg)`` under two primes.

    Returns ``(value, flagged)``. When the two disagree a third prime breaks
    the tie and the result is flagged.
    """
    first = compute(cfg)
    second = compute(replace(cfg, prime=alt_primes[0]))
    if first == second:
        return first, False
    third = compute(replace(cfg, prime=alt_primes[1]))
    return (third if third in (first, second) else first), True
