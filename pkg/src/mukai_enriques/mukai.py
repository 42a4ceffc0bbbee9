"""Mukai vectors v = r + c1 - (s/2) rho on an Enriques surface, and their moves."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence, Union

from . import lattice as lt
from .lattice import BasisChange, ClassVector


class MovePreconditionError(ValueError):
    """A move was applied outside the hypotheses under which it is certified."""

    def __init__(self, move: str, check: str, detail: str = ""):
        self.move = move
        self.check = check
        super().__init__(f"{move}: {check} violated" + (f" ({detail})" if detail else ""))


@dataclass(frozen=True)
class MukaiVector:
    r: int
    c1: ClassVector
    s: int

    def __post_init__(self):
        if not isinstance(self.c1, ClassVector):
            object.__setattr__(self, "c1", ClassVector(self.c1))
        if (self.r - self.s) % 2:
            raise ValueError(f"parity violated: s={self.s} and r={self.r} must agree mod 2")

    @property
    def t(self):
        """Coefficient of rho in rank-2 notation v = 2 + c1 + t*rho."""
        if self.s % 2:
            raise ValueError("t = -s/2 is only integral for even s")
        return -self.s // 2

    @property
    def d1(self) -> int:
        return self.c1[0]

    @property
    def d2(self) -> int:
        return self.c1[1]

    def to_json(self) -> dict:
        return {"r": self.r, "c1": list(self.c1), "s": self.s}

    @classmethod
    def from_json(cls, data: dict) -> "MukaiVector":
        return cls(int(data["r"]), ClassVector(data["c1"]), int(data["s"]))

    @classmethod
    def rank2(cls, c1: Sequence[int], t: int) -> "MukaiVector":
        return cls(2, ClassVector(c1), -2 * t)

    def __str__(self) -> str:
        return f"(r={self.r}, c1={lt.format_vector(self.c1)}, s={self.s})"


@dataclass(frozen=True)
class ChernData:
    r: int
    c1: ClassVector
    c2: int


def mukai_pairing(v: MukaiVector, w: MukaiVector) -> int:
    return lt.inner(v.c1, w.c1) + (v.r * w.s + w.r * v.s) // 2


def v_square(v: MukaiVector) -> int:
    return lt.norm(v.c1) + v.r * v.s


def from_chern(d: ChernData) -> MukaiVector:
    return MukaiVector(d.r, ClassVector(d.c1), -d.r - lt.norm(d.c1) + 2 * d.c2)


def to_chern(v: MukaiVector) -> ChernData:
    return ChernData(v.r, v.c1, (v.s + v.r + lt.norm(v.c1)) // 2)


def euler_char(v: MukaiVector) -> int:
    """chi = r + c1^2/2 - c2, equivalently (r - s)/2."""
    return v.r + lt.norm(v.c1) // 2 - to_chern(v).c2


def twist(v: MukaiVector, d: Sequence[int]) -> MukaiVector:
    """v * exp(D)."""
    return MukaiVector(v.r, v.c1 + v.r * ClassVector(d),
                       v.s - 2 * lt.inner(v.c1, d) - v.r * lt.norm(d))


def switch_checks(v: MukaiVector) -> list:
    """Names of the switch hypotheses, raising on the first that fails."""
    if v.r <= 0:
        raise MovePreconditionError("switch", "r>0", f"r={v.r}")
    if v.s <= 0:
        raise MovePreconditionError("switch", "s>0", f"s={v.s}")
    if lt.norm(v.c1) >= 0:
        raise MovePreconditionError("switch", "c1^2<0", f"c1^2={lt.norm(v.c1)}")
    return ["r>0", "s>0", "c1^2<0"]


def switch(v: MukaiVector) -> MukaiVector:
    """(r, c1, s) -> (s, -c1, r), defined when r, s > 0 and c1^2 < 0."""
    switch_checks(v)
    return MukaiVector(v.s, -v.c1, v.r)


def gcd_rcs(v: MukaiVector) -> int:
    return gcd(gcd(v.r, lt.content(v.c1)), v.s)


def is_primitive(v: MukaiVector) -> bool:
    # coordinates in the basis {1 + rho/2, e-basis, rho} are (r, c1, -(r + s)/2)
    return gcd(gcd(v.r, lt.content(v.c1)), (v.r + v.s) // 2) == 1


# ---------------------------------------------------------------- moves


@dataclass(frozen=True)
class Twist:
    d: ClassVector

    def __post_init__(self):
        if not isinstance(self.d, ClassVector):
            object.__setattr__(self, "d", ClassVector(self.d))

    def inverse(self) -> "Twist":
        return Twist(-self.d)


@dataclass(frozen=True)
class Switch:
    def inverse(self) -> "Switch":
        return self


@dataclass(frozen=True)
class ReBase:
    change: BasisChange

    def inverse(self) -> "ReBase":
        return ReBase(self.change.inverse())


Move = Union[Twist, Switch, ReBase]


def move_checks(v: MukaiVector, move: Move) -> list:
    """Verify the hypotheses of ``move`` at v and return their names."""
    if isinstance(move, Switch):
        return switch_checks(v)
    if isinstance(move, ReBase):
        # BasisChange validates itself on construction; restate for the record
        return ["det=+-1", "isometry"]
    if isinstance(move, Twist):
        return []
    raise TypeError(f"unknown move {move!r}")


def apply_move(v: MukaiVector, move: Move) -> MukaiVector:
    if isinstance(move, Twist):
        return twist(v, move.d)
    if isinstance(move, Switch):
        return switch(v)
    if isinstance(move, ReBase):
        return MukaiVector(v.r, move.change.to_new(v.c1), v.s)
    raise TypeError(f"unknown move {move!r}")


def move_to_json(move: Move):
    if isinstance(move, Twist):
        return {"twist": list(move.d)}
    if isinstance(move, Switch):
        return "switch"
    if isinstance(move, ReBase):
        if move.change.name in _NAMED_CHANGES:
            return {"rebase": move.change.name}
        return {"rebase": [list(row) for row in move.change.transform]}
    raise TypeError(f"unknown move {move!r}")


_NAMED_CHANGES = {
    "alternate": lt.alternate_decomposition,
    "swap": lt.swap_decomposition,
}


def move_from_json(data) -> Move:
    if data == "switch":
        return Switch()
    if isinstance(data, dict) and "twist" in data:
        return Twist(ClassVector(data["twist"]))
    if isinstance(data, dict) and "rebase" in data:
        spec = data["rebase"]
        if isinstance(spec, str):
            if spec not in _NAMED_CHANGES:
                raise ValueError(f"unknown basis change {spec!r}")
            return ReBase(_NAMED_CHANGES[spec]())
        return ReBase(BasisChange(tuple(tuple(int(a) for a in row) for row in spec)))
    raise ValueError(f"cannot decode move {data!r}")
