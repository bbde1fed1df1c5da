"""Integer primitives and the two value types shared by every module."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


class ContractError(ValueError):
    """Raised when an operation is called outside its precondition."""


def pos_part(a: int) -> int:
    return a if a > 0 else 0


def binom_safe(a: int, b: int) -> int:
    """C(a, b) with the convention that it vanishes for a < b.

    Python integers are unbounded, so no wrap-around can occur.
    """
    if b < 0:
        raise ContractError(f"binom_safe needs b >= 0, got {b}")
    if a < b:
        return 0
    if b == 0:
        return 1
    if b == 1:
        return a
    if b == 2:
        return a * (a - 1) // 2
    num = 1
    den = 1
    for i in range(b):
        num *= a - i
        den *= i + 1
    return num // den


@dataclass(frozen=True)
class PowerSequence:
    """Exponents (a_1, ..., a_r) of the general linear forms generating I.

    The constructor sorts its input, so callers never depend on order.
    """

    powers: tuple[int, ...]

    def __init__(self, powers: Iterable[int]):
        vals = tuple(sorted(int(a) for a in powers))
        if not vals:
            raise ContractError("a power sequence needs at least one entry")
        if vals[0] < 1:
            raise ContractError(f"powers must be positive, got {vals}")
        object.__setattr__(self, "powers", vals)

    @property
    def r(self) -> int:
        return len(self.powers)

    def __iter__(self):
        return iter(self.powers)

    def __len__(self) -> int:
        return len(self.powers)

    def __getitem__(self, i):
        return self.powers[i]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.powers)) + ")"


@dataclass(frozen=True)
class LinearSystem:
    """The system L(j; b_1, ..., b_n) of degree-j plane curves with
    multiplicity at least b_i at n general points.

    Multiplicities are kept as given; see ``reduction.normalize`` for the
    canonical form. The degree may be negative during reductions.
    """

    degree: int
    mults: tuple[int, ...] = ()

    def __init__(self, degree: int, mults: Iterable[int] = ()):
        object.__setattr__(self, "degree", int(degree))
        object.__setattr__(self, "mults", tuple(int(b) for b in mults))

    @property
    def n(self) -> int:
        return len(self.mults)

    def __str__(self) -> str:
        return f"L({self.degree}; {','.join(map(str, self.mults))})"

    def to_dict(self) -> dict:
        return {"degree": self.degree, "mults": list(self.mults)}


def virtual_dimension(sys: LinearSystem) -> int:
    return binom_safe(sys.degree + 2, 2) - sum(binom_safe(b + 1, 2) for b in sys.mults)


def expected_dimension(sys: LinearSystem) -> int:
    return pos_part(virtual_dimension(sys))
