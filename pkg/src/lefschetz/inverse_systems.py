"""Graded pieces of R/(L_1^a_1, ..., L_r^a_r) through Macaulay duality.

In degree j, generators of degree a_i > j contribute nothing; the rest
dualize to fat points of multiplicity j - a_i + 1, and the dimension of
the quotient equals the dimension of the resulting linear system.
"""

from __future__ import annotations

from dataclasses import dataclass

from lefschetz.combinatorics import ContractError, LinearSystem, PowerSequence, binom_safe
from lefschetz.reduction import DimResult, ReductionStep, ReductionTrace, StepKind, dim_linear_system, normalize


@dataclass(frozen=True)
class QuotientQuery:
    """dim_K [R/(I, L^k)]_j, or dim_K [R/I]_j when ``square_shift`` is None."""

    powers: PowerSequence
    degree: int
    square_shift: int | None = None

    def __post_init__(self):
        if self.degree < 0:
            raise ContractError(f"degree must be >= 0, got {self.degree}")
        if self.square_shift is not None and self.square_shift < 1:
            raise ContractError(f"shift must be >= 1, got {self.square_shift}")


def apply_duality(powers: PowerSequence, j: int) -> LinearSystem:
    if j < max(powers):
        raise ContractError(f"duality needs j >= max(powers) = {max(powers)}, got j={j}")
    return normalize(LinearSystem(j, [j - a + 1 for a in powers]))


def quotient_dim(q: QuotientQuery) -> DimResult:
    j = q.degree
    kept = [a for a in q.powers if a <= j]
    if q.square_shift is not None and q.square_shift <= j:
        kept.append(q.square_shift)
    if not kept:
        free = LinearSystem(j)
        return DimResult(
            binom_safe(j + 2, 2),
            ReductionTrace((ReductionStep(StepKind.EMPTY_STOP, free, free),), free),
        )
    return dim_linear_system(apply_duality(PowerSequence(kept), j))


def _dim(powers: PowerSequence, j: int, shift: int | None = None) -> int | None:
    return quotient_dim(QuotientQuery(powers, j, shift)).dim


def hilbert_function(powers: PowerSequence) -> list[int | None]:
    """Hilbert function of R/I up to its last nonzero value.

    An undetermined degree appears as ``None``; the scan continues past it.
    """
    if powers.r < 3:
        raise ContractError("non-artinian: Hilbert function does not terminate")
    cap = sum(powers)
    values: list[int | None] = []
    for j in range(cap + 1):
        d = _dim(powers, j)
        if d == 0:
            return values
        values.append(d)
    raise RuntimeError(f"Hilbert function of {powers} did not vanish by degree {cap}")


def ci_hilbert_function(powers: PowerSequence, length: int | None = None) -> list[int]:
    """Hilbert function of a monomial complete intersection in three variables.

    For r < 3 the quotient is not artinian and ``length`` terms are returned.
    """
    if powers.r > 3:
        raise ContractError(f"complete-intersection formula needs r <= 3, got r={powers.r}")
    if powers.r < 3 and length is None:
        raise ContractError("r < 3 is non-artinian; pass length")
    coeffs = [1]
    for a in powers:
        out = [0] * (len(coeffs) + a - 1)
        for i, c in enumerate(coeffs):
            for k in range(a):
                out[i + k] += c
        coeffs = out
    for _ in range(3 - powers.r):
        # multiply by 1/(1-t): running sums over a long enough window
        coeffs = coeffs + [0] * max(0, length - len(coeffs))
        acc = 0
        for i, c in enumerate(coeffs):
            acc += c
            coeffs[i] = acc
    if length is not None:
        coeffs = (coeffs + [0] * length)[:length]
    return coeffs
