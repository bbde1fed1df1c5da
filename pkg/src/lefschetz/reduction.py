"""Exact dimensions of fat-point linear systems via Cremona and Bezout moves.

The reduction loop is deterministic:

1. normalize (sort multiplicities, drop those <= 0);
2. stop on negative degree, no points, or standard position;
3. else apply the two-point Bezout move if j < b_1 + b_2;
4. else apply the Cremona move if its shift is negative;
5. else apply the five-point Bezout move if 2j < b_1 + ... + b_5;
6. else give up with an undetermined result.

Each move preserves the dimension, and a standard system is non-special,
so a standard terminal gives the dimension as the expected one.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from lefschetz.combinatorics import (
    ContractError,
    LinearSystem,
    binom_safe,
    expected_dimension,
)


class StepKind(str, enum.Enum):
    NORMALIZE = "Normalize"
    CREMONA = "Cremona"
    BEZOUT_FIVE = "BezoutFive"
    BEZOUT_TWO = "BezoutTwo"
    STANDARD_STOP = "StandardStop"
    EMPTY_STOP = "EmptyStop"
    NEGATIVE_DEGREE_STOP = "NegativeDegreeStop"


@dataclass(frozen=True)
class ReductionStep:
    kind: StepKind
    before: LinearSystem
    after: LinearSystem
    shift: int | None = None  # Cremona shift m = j - (b_1 + b_2 + b_3)

    def to_dict(self) -> dict:
        d = {"kind": self.kind.value, "before": self.before.to_dict(), "after": self.after.to_dict()}
        if self.shift is not None:
            d["m"] = self.shift
        return d

    def __str__(self) -> str:
        tag = self.kind.value if self.shift is None else f"{self.kind.value}(m={self.shift})"
        return f"{tag}: {self.before} -> {self.after}"


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[ReductionStep, ...]
    terminal: LinearSystem

    def to_dict(self) -> dict:
        return {"steps": [s.to_dict() for s in self.steps], "terminal": self.terminal.to_dict()}


@dataclass(frozen=True)
class DimResult:
    """An exact dimension (``dim``) or ``None`` when no rule settles it."""

    dim: int | None
    trace: ReductionTrace = field(compare=False)

    @property
    def exact(self) -> bool:
        return self.dim is not None

    def __str__(self) -> str:
        return f"Exact({self.dim})" if self.exact else "Undetermined"


def normalize(sys: LinearSystem) -> LinearSystem:
    return LinearSystem(sys.degree, sorted((b for b in sys.mults if b > 0), reverse=True))


def _padded(sys: LinearSystem, n: int) -> list[int]:
    mults = list(sys.mults)
    return mults + [0] * (n - len(mults))


def is_standard(sys: LinearSystem) -> bool:
    b = _padded(sys, 3)
    return sys.degree >= b[0] + b[1] + b[2]


def cremona_shift(sys: LinearSystem) -> int:
    b = _padded(sys, 3)
    return sys.degree - (b[0] + b[1] + b[2])


def cremona_step(sys: LinearSystem) -> LinearSystem:
    if sys.n < 3:
        raise ContractError(f"Cremona move needs at least 3 points: {sys}")
    b = list(sys.mults)
    m = sys.degree - (b[0] + b[1] + b[2])
    if min(b[0], b[1], b[2]) + m < 0:
        raise ContractError(f"Cremona move needs b_i + m >= 0 (m={m}): {sys}")
    return normalize(LinearSystem(sys.degree + m, [b[0] + m, b[1] + m, b[2] + m] + b[3:]))


def bezout_five_step(sys: LinearSystem) -> LinearSystem:
    b = _padded(sys, 5)
    if not 2 * sys.degree < sum(b[:5]):
        raise ContractError(f"five-point Bezout move needs 2j < b_1+...+b_5: {sys}")
    return normalize(LinearSystem(sys.degree - 2, [x - 1 for x in b[:5]] + b[5:]))


def bezout_two_step(sys: LinearSystem) -> LinearSystem:
    b = _padded(sys, 2)
    if not sys.degree < b[0] + b[1]:
        raise ContractError(f"two-point Bezout move needs j < b_1 + b_2: {sys}")
    return normalize(LinearSystem(sys.degree - 1, [b[0] - 1, b[1] - 1] + b[2:]))


def dim_linear_system(sys: LinearSystem) -> DimResult:
    steps: list[ReductionStep] = []
    cur = normalize(sys)
    if cur != sys:
        steps.append(ReductionStep(StepKind.NORMALIZE, sys, cur))

    def stop(kind: StepKind, dim: int) -> DimResult:
        steps.append(ReductionStep(kind, cur, cur))
        return DimResult(dim, ReductionTrace(tuple(steps), cur))

    while True:
        j = cur.degree
        if j < 0:
            return stop(StepKind.NEGATIVE_DEGREE_STOP, 0)
        if not cur.mults:
            return stop(StepKind.EMPTY_STOP, binom_safe(j + 2, 2))
        if is_standard(cur):
            # covers a single point with j >= b_1 through zero padding
            return stop(StepKind.STANDARD_STOP, expected_dimension(cur))
        b = _padded(cur, 5)
        if j < b[0] + b[1]:
            nxt = bezout_two_step(cur)
            steps.append(ReductionStep(StepKind.BEZOUT_TWO, cur, nxt))
        elif cur.n >= 3 and cremona_shift(cur) < 0 and b[2] + cremona_shift(cur) >= 0:
            m = cremona_shift(cur)
            nxt = cremona_step(cur)
            steps.append(ReductionStep(StepKind.CREMONA, cur, nxt, shift=m))
        elif 2 * j < sum(b[:5]):
            nxt = bezout_five_step(cur)
            steps.append(ReductionStep(StepKind.BEZOUT_FIVE, cur, nxt))
        else:
            return DimResult(None, ReductionTrace(tuple(steps), cur))
        cur = nxt
