"""Maximal-rank verdicts for multiplication by powers of a general linear form.

For an artinian A = R/I and a general linear form L, the exact sequence

    A_{j-k} --(x L^k)--> A_j --> [A/L^k A]_j --> 0

makes x L^k of maximal rank in degree j exactly when
dim [A/L^k A]_j == max(0, dim A_j - dim A_{j-k}). Every dimension here is
obtained either combinatorially (duality plus reductions) or from the
prime-field oracle.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from lefschetz.combinatorics import ContractError, LinearSystem, PowerSequence, pos_part
from lefschetz.inverse_systems import QuotientQuery, quotient_dim
from lefschetz.oracle import PrimeFieldConfig, oracle_profile
from lefschetz.reduction import dim_linear_system


class Engine(str, enum.Enum):
    COMBINATORIAL = "Combinatorial"
    ORACLE = "Oracle"


ALL_MAXIMAL = "AllMaximal"
FAILURES_AT = "FailuresAt"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Verdict:
    status: str
    failures: tuple[int, ...] = ()

    def __str__(self) -> str:
        if self.status == FAILURES_AT:
            return f"{FAILURES_AT}({','.join(map(str, self.failures))})"
        return self.status


@dataclass(frozen=True)
class RankRow:
    degree: int
    dim_source: int | None
    dim_target: int | None
    dim_quotient: int | None
    rank: int | None
    maximal: bool | None
    engine: Engine

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "dim_source": self.dim_source,
            "dim_target": self.dim_target,
            "dim_quotient": self.dim_quotient,
            "rank": self.rank,
            "maximal": self.maximal,
            "engine": self.engine.value,
        }

    def dims(self) -> tuple:
        return (self.degree, self.dim_source, self.dim_target, self.dim_quotient)


@dataclass(frozen=True)
class RankReport:
    powers: PowerSequence
    shift: int
    rows: tuple[RankRow, ...]
    verdict: Verdict

    def to_dict(self) -> dict:
        return {
            "powers": list(self.powers),
            "shift": self.shift,
            "rows": [row.to_dict() for row in self.rows],
            "verdict": str(self.verdict),
        }


def make_row(j: int, source, target, quotient, engine: Engine) -> RankRow:
    if None in (source, target, quotient):
        return RankRow(j, source, target, quotient, None, None, engine)
    return RankRow(j, source, target, quotient, target - quotient,
                   quotient == pos_part(target - source), engine)


def aggregate(rows) -> Verdict:
    if any(row.maximal is None for row in rows):
        return Verdict(INCONCLUSIVE)
    failures = tuple(row.degree for row in rows if not row.maximal)
    return Verdict(FAILURES_AT, failures) if failures else Verdict(ALL_MAXIMAL)


# --- case split ------------------------------------------------------------


@dataclass(frozen=True)
class CaseData:
    """Numerical invariants of a power sequence.

    ``p`` is the socle degree of A/LA in the balanced case, with
    sum(a) = (r-1)(p+1) + b; ``s`` and ``t`` count the powers equal to p and
    p+1. In case II, ``m`` is the least index whose successor power exceeds
    the averaged bound and ``q`` is the corresponding floor.
    """

    p: int
    b: int
    s: int
    t: int
    case: str  # "I" or "II"
    m: int | None = None
    q: int | None = None

    def to_dict(self) -> dict:
        return {"p": self.p, "b": self.b, "s": self.s, "t": self.t,
                "case": self.case, "m": self.m, "q": self.q}


def compute_case_data(powers: PowerSequence) -> CaseData:
    r = powers.r
    if r < 2:
        raise ContractError(f"case split needs r >= 2, got r={r}")
    a = powers.powers
    total = sum(a)
    p = (total - r) // (r - 1)
    b = total - (r - 1) * (p + 1)
    s = a.count(p)
    t = a.count(p + 1)
    prefix = a[0]
    for m in range(2, r):
        prefix += a[m - 1]  # sum of a_1..a_m
        if (m - 1) * a[m] > prefix - m:
            return CaseData(p, b, s, t, "II", m, (prefix - m) // (m - 1))
    return CaseData(p, b, s, t, "I")


def predicted_critical_dim(cd: CaseData, r: int) -> int:
    """Predicted dim [A/L^2 A]_{p+1} in the balanced case."""
    if cd.case != "I":
        raise ContractError("the critical-degree formula only holds in case I")
    return pos_part(2 * cd.b + 1 - r)


def line_base_multiplicities(powers: PowerSequence, p: int) -> list[int]:
    """Multiplicity of the line through the extra point and each p_i in the
    base locus of L(p+1; p, p-a_1+2, ..., p-a_r+2)."""
    return [pos_part(p - a + 1) for a in powers]


# --- rank profiles ---------------------------------------------------------


def _comb_dim(powers: PowerSequence, j: int, shift: int | None = None) -> int | None:
    if j < 0:
        return 0
    return quotient_dim(QuotientQuery(powers, j, shift)).dim


def _comb_hilbert(powers: PowerSequence) -> list[int | None]:
    """dim A_j until two consecutive zeros (both included)."""
    values: list[int | None] = []
    j = 0
    while len(values) < 2 or values[-1] != 0 or values[-2] != 0:
        values.append(_comb_dim(powers, j))
        j += 1
        if j > sum(powers) + 2:
            raise RuntimeError(f"Hilbert function of {powers} did not vanish")
    return values


def _last_nonzero(values) -> int:
    return max((j for j, v in enumerate(values) if v != 0), default=-1)


def _row_degrees(k: int, hilbert) -> range:
    e = _last_nonzero(hilbert)
    return range(k, max(k, e + 1) + 1)


def _oracle_rows(powers: PowerSequence, k: int, cfg: PrimeFieldConfig, profile=None) -> list[RankRow]:
    if profile is None:
        profile = oracle_profile(powers, (k,), cfg)
    hil = profile.hilbert
    quo = profile.quotients[k]

    def at(seq, j):
        return 0 if j < 0 or j >= len(seq) else seq[j]

    return [make_row(j, at(hil, j - k), at(hil, j), at(quo, j), Engine.ORACLE)
            for j in _row_degrees(k, hil)]


def rank_profile(powers: PowerSequence, k: int, engine: Engine = Engine.COMBINATORIAL,
                 cfg: PrimeFieldConfig | None = None, profile=None) -> RankReport:
    """Per-degree ranks of x L^k on A = R/I from degree k to one past the socle.

    ``profile`` may carry a precomputed ``oracle_profile`` covering shift k.
    """
    if k < 1:
        raise ContractError(f"shift must be >= 1, got {k}")
    if powers.r < 3:
        raise ContractError("rank profiles need r >= 3 (artinian quotient)")
    engine = Engine(engine)
    if engine is Engine.ORACLE:
        if cfg is None and profile is None:
            raise ContractError("the oracle engine needs a PrimeFieldConfig")
        rows = _oracle_rows(powers, k, cfg, profile)
    else:
        hil = _comb_hilbert(powers)

        def at(j):
            return 0 if j < 0 or j >= len(hil) else hil[j]

        rows = [make_row(j, at(j - k), at(j), _comb_dim(powers, j, k), Engine.COMBINATORIAL)
                for j in _row_degrees(k, hil)]
    return RankReport(powers, k, tuple(rows), aggregate(rows))


def verify_report(powers: PowerSequence, cfg: PrimeFieldConfig | None = None, k: int = 2) -> RankReport:
    """Combinatorial profile of x L^k; undetermined rows fall back to the oracle when ``cfg`` is given."""
    if powers.r < 3:
        raise ContractError("verification needs r >= 3 (artinian quotient)")
    report = rank_profile(powers, k)
    if report.verdict.status != INCONCLUSIVE or cfg is None:
        return report
    oracle_rows = {row.degree: row for row in _oracle_rows(powers, k, cfg)}
    rows = []
    for row in report.rows:
        if row.maximal is None:
            row = oracle_rows.get(row.degree, make_row(row.degree, 0, 0, 0, Engine.ORACLE))
        rows.append(row)
    return RankReport(powers, k, tuple(rows), aggregate(rows))


def verify_theorem(powers: PowerSequence, cfg: PrimeFieldConfig | None = None) -> Verdict:
    return verify_report(powers, cfg).verdict


# --- case I bookkeeping ----------------------------------------------------


@dataclass
class ProofLedger:
    """Named checks (True / False / None for not applicable) with the
    quantities they were computed from."""

    checks: dict[str, bool | None] = field(default_factory=dict)
    quantities: dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(v is not False for v in self.checks.values())

    def failed(self) -> list[str]:
        return [name for name, v in self.checks.items() if v is False]

    def to_dict(self) -> dict:
        return {"checks": dict(self.checks), "quantities": dict(self.quantities), "passed": self.passed}


def max_sum_of_squares(r: int, total: int, cap: int) -> int | None:
    """Largest sum(a_i^2) over r-tuples with 1 <= a_i <= cap and sum == total."""
    best = None
    for seq in combinations_with_replacement(range(1, cap + 1), r):
        if sum(seq) == total:
            sq = sum(x * x for x in seq)
            best = sq if best is None else max(best, sq)
    return best


def case_i_proof_ledger(powers: PowerSequence, exhaustive: bool = False) -> ProofLedger:
    """Check, on one instance, the numbered steps of the balanced-case argument.

    With ``exhaustive`` (and r <= 6) the extremal sum-of-squares claim is
    also checked by enumerating every admissible sequence.
    """
    cd = compute_case_data(powers)
    if cd.case != "I":
        raise ContractError(f"{powers} is in case II (m={cd.m}); the case I ledger does not apply")
    a = powers.powers
    r, p, b = powers.r, cd.p, cd.b
    led = ProofLedger()
    led.quantities.update(cd.to_dict())
    sum_sq = sum(x * x for x in a)
    led.quantities["sum_sq"] = sum_sq

    led.checks["powers_at_most_p_plus_1"] = max(a) <= p + 1
    led.checks["b_in_range"] = 1 <= b <= r - 1
    led.checks["sum_sq_bound"] = sum_sq <= (r - 1) * (p + 1) ** 2 + b * (2 * p + 1)
    led.checks["extremal_bound"] = sum_sq <= (r - 1) * (p + 1) ** 2 + b * b
    if exhaustive and r <= 6:
        best = max_sum_of_squares(r, sum(a), p + 1)
        led.quantities["max_sum_sq"] = best
        led.checks["extremal_sequence_is_max"] = best == (r - 1) * (p + 1) ** 2 + b * b

    mults = line_base_multiplicities(powers, p)
    led.quantities["line_multiplicities"] = mults
    led.checks["line_multiplicities_unclamped"] = mults == [p - x + 1 for x in a]

    lhs = _comb_dim(powers, p + 1, 2)
    rhs = None if None in (_comb_dim(powers, p + 1), _comb_dim(powers, p - 1)) else \
        pos_part(_comb_dim(powers, p + 1) - _comb_dim(powers, p - 1))
    led.quantities.update(lhs=lhs, rhs=rhs)
    led.checks["main_equality"] = lhs is not None and lhs == rhs
    if p >= 1:
        formula = pos_part(2 * b + 1 - r)
        led.quantities["formula"] = formula
        led.checks["critical_formula"] = lhs == formula
        extra = dim_linear_system(LinearSystem(p + 1, [p] + [p - x + 2 for x in a])).dim
        reduced = dim_linear_system(LinearSystem(b, [b - 1] + [1] * r)).dim
        led.quantities.update(critical_system_dim=extra, reduced_system_dim=reduced)
        led.checks["line_reduction"] = extra is not None and extra == reduced == formula
    else:
        # degree p - 1 < 0: the formula is not claimed here
        led.checks["critical_formula"] = None
        led.checks["line_reduction"] = None

    if r >= 5 and p >= 1 and max(a) <= p + 1:
        end = endgame_check(powers)
        led.quantities.update({k: v for k, v in end.items() if k not in ("checks",)})
        led.checks.update(end["checks"])
    return led


def endgame_check(powers: PowerSequence) -> dict:
    """Classify d = a_1 + a_2 + a_3 - (2p + 5) and check the branch value.

    Needs r >= 5, p >= 1 and every a_i <= p + 1, which is all the branch
    argument uses. For d >= 0 both systems are standard and the value is
    [2b+1-r]_+; d = -1 and d = -2 force b = 1 or b = 2 and both sides of the
    critical equality vanish.
    """
    cd = compute_case_data(powers)
    a = powers.powers
    r, p, b = powers.r, cd.p, cd.b
    if r < 5 or p < 1 or max(a) > p + 1:
        raise ContractError(f"endgame needs r >= 5, p >= 1 and a_i <= p + 1: {powers}")
    lhs = _comb_dim(powers, p + 1, 2)
    hi, lo = _comb_dim(powers, p + 1), _comb_dim(powers, p - 1)
    rhs = None if None in (hi, lo) else pos_part(hi - lo)
    delta = a[0] + a[1] + a[2] - (2 * p + 5)
    out: dict = {"delta": delta, "lhs": lhs, "rhs": rhs}
    checks = {"delta_at_least_minus_2": delta >= -2}
    if delta >= 0:
        out["endgame"] = "standard"
        checks["endgame"] = rhs == pos_part(2 * b + 1 - r)
    elif delta == -1:
        tail = 2 * p - a[3] - a[4]
        out["tail"] = tail
        if tail == -1:
            out["endgame"] = "[3-r]+"
            checks["endgame_b"] = b == 1
            checks["endgame"] = pos_part(3 - r) == 0 and rhs == 0 and lhs == 0
        else:
            out["endgame"] = "[5-r]+"
            checks["endgame_b"] = tail == -2 and b == 2
            checks["endgame"] = pos_part(5 - r) == 0 and rhs == 0 and lhs == 0
    elif delta == -2:
        out["endgame"] = "[3-r]+ (d=-2)"
        checks["endgame_b"] = b == 1
        checks["endgame"] = pos_part(3 - r) == 0 and rhs == 0 and lhs == 0
    out["checks"] = checks
    return out


# --- case II bookkeeping ---------------------------------------------------


@dataclass(frozen=True)
class CaseIIRow:
    degree: int
    label: str
    checks: dict

    @property
    def passed(self) -> bool:
        return all(v is not False for v in self.checks.values())


@dataclass(frozen=True)
class CaseIIAnalysis:
    m: int
    q: int
    next_power: int
    rows: tuple[CaseIIRow, ...]
    tail: dict  # t -> socle of R/(l_1^a_1..l_t^a_t, L) is at most q
    full_verdict: Verdict

    @property
    def passed(self) -> bool:
        return (all(row.passed for row in self.rows) and all(self.tail.values())
                and self.full_verdict.status == ALL_MAXIMAL)

    def to_dict(self) -> dict:
        return {
            "m": self.m, "q": self.q, "next_power": self.next_power,
            "rows": [{"degree": r.degree, "label": r.label, "checks": r.checks} for r in self.rows],
            "tail": {str(t): ok for t, ok in self.tail.items()},
            "full_verdict": str(self.full_verdict),
            "passed": self.passed,
        }


def _map_state(powers: PowerSequence, j: int) -> dict:
    src = _comb_dim(powers, j - 2)
    tgt = _comb_dim(powers, j)
    quo = _comb_dim(powers, j, 2)
    return {"source": src, "target": tgt, "quotient": quo,
            "surjective": quo == 0, "injective": tgt - quo == src,
            "maximal": quo == pos_part(tgt - src)}


def case_ii_analysis(powers: PowerSequence) -> CaseIIAnalysis:
    """Label each degree of the truncated algebra R/(l_1^a_1..l_{m+1}^a_{m+1})
    and check the consequence each label is supposed to carry."""
    cd = compute_case_data(powers)
    if cd.case != "II":
        raise ContractError(f"{powers} is in case I; the case II analysis does not apply")
    m, q = cd.m, cd.q
    a = powers.powers
    nxt = a[m]  # a_{m+1}
    small = PowerSequence(a[:m])
    trunc = PowerSequence(a[: m + 1])
    socle = _last_nonzero(_comb_hilbert(trunc))
    rows = []
    for j in range(2, max(2, socle + 1) + 1):
        B = _map_state(small, j)
        A = _map_state(trunc, j)
        checks: dict = {"maximal": A["maximal"]}
        if j < nxt:
            label = "Isomorphic"
            checks["same_source"] = B["source"] == A["source"]
            checks["same_target"] = B["target"] == A["target"]
        elif j > nxt:
            label = "SurjectiveFromB"
            checks["degree_at_least_q_plus_2"] = j >= q + 2
            checks["small_surjective"] = B["surjective"]
            checks["surjective"] = A["surjective"]
        elif nxt >= q + 2:
            label = "CriticalSurjective"
            checks["small_surjective"] = B["surjective"]
            checks["surjective"] = A["surjective"]
        else:
            label = "CriticalInjective"
            checks["next_power_is_q_plus_1"] = nxt == q + 1
            if B["surjective"]:
                checks["surjective"] = A["surjective"]
            else:
                checks["small_injective"] = B["injective"]
                checks["injective"] = A["injective"]
        rows.append(CaseIIRow(j, label, checks))
    tail = {}
    for t in range(m + 1, powers.r + 1):
        tail[t] = _comb_dim(PowerSequence(a[:t]), q + 1, 1) == 0
    return CaseIIAnalysis(m, q, nxt, tuple(rows), tail, verify_theorem(powers))
