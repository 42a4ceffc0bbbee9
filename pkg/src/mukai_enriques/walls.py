"""Walls of type (r, Delta) in the positive cone and off-wall polarizations."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple

from . import intlinalg as il
from . import lattice as lt
from .lattice import ClassVector
from .mukai import ChernData


@dataclass(frozen=True)
class WallSpec:
    r: int
    Delta: int

    def __post_init__(self):
        if self.r < 2 or self.Delta <= 0:
            raise ValueError(f"wall type needs r >= 2 and Delta > 0, got ({self.r}, {self.Delta})")

    @property
    def lower_norm(self) -> int:
        """Smallest integer norm allowed, i.e. ceil(-r^2 Delta / 4)."""
        return -((self.r * self.r * self.Delta) // 4)

    @classmethod
    def parse(cls, text: str) -> "WallSpec":
        r, delta = (int(a) for a in text.split(","))
        return cls(r, delta)


@dataclass(frozen=True)
class Wall:
    xi: ClassVector
    spec: WallSpec

    def __post_init__(self):
        if not is_of_type(self.xi, self.spec):
            raise ValueError(f"{self.xi} is not of type ({self.spec.r}, {self.spec.Delta})")


@dataclass(frozen=True)
class AmpleClass:
    """A class assumed ample by the caller; only H^2 > 0 is checked."""

    H: ClassVector
    trusted: bool = True

    def __post_init__(self):
        if not isinstance(self.H, ClassVector):
            object.__setattr__(self, "H", ClassVector(self.H))
        if lt.norm(self.H) <= 0:
            raise ValueError("ample class must have positive square")


def is_of_type(xi: Sequence[int], spec: WallSpec) -> bool:
    """-(r^2/4) Delta <= xi^2 < 0, compared exactly as 4 xi^2 >= -r^2 Delta."""
    n = lt.norm(xi)
    return n < 0 and 4 * n >= -spec.r * spec.r * spec.Delta


def _representative(x: ClassVector) -> ClassVector:
    first = next(a for a in x if a)
    return x if first > 0 else -x


def walls_through(h, spec: WallSpec) -> List[Wall]:
    """All walls of the given type containing [H], one xi per +-pair, sorted."""
    hv = h.H if isinstance(h, AmpleClass) else ClassVector(h)
    lower = spec.lower_norm
    if lower > -1:
        return []
    comp = lt.orthogonal_complement(hv)
    reps = {_representative(x) for x in lt.short_vectors(comp, lower, -1) if is_of_type(x, spec)}
    return [Wall(x, spec) for x in sorted(reps)]


def on_wall(h, spec: WallSpec) -> Optional[Wall]:
    walls = walls_through(h, spec)
    return walls[0] if walls else None


def subsheaf_class(r: int, c1E: Sequence[int], r_prime: int, c1_prime: Sequence[int]) -> ClassVector:
    """xi = r c1(E') - r' c1(E) for a subsheaf E' of rank r' in E of rank r."""
    if not 0 < r_prime < r:
        raise ValueError(f"need 0 < r' < r, got r'={r_prime}, r={r}")
    return r * ClassVector(c1_prime) - r_prime * ClassVector(c1E)


def discriminant(d: ChernData) -> int:
    """Delta = 2 r c2 - (r - 1) c1^2."""
    if d.r < 1:
        raise ValueError("discriminant needs r >= 1")
    return 2 * d.r * d.c2 - (d.r - 1) * lt.norm(d.c1)


# ---------------------------------------------------------------- polarization


class PolarizationExhausted(RuntimeError):
    def __init__(self, message: str, report: dict):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class PolarizationBudget:
    n: int = 16          # direct attempts L1 + n FA
    q: int = 64          # denominators tried per perturbation direction
    directions: int = 4  # perturbation directions tried


@dataclass
class Polarization:
    L0: ClassVector
    n: int
    H: ClassVector
    report: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"L0": list(self.L0), "n": self.n, "H": list(self.H), "report": self.report}


def _common_wall(l1: ClassVector, fa: ClassVector, spec: WallSpec) -> Optional[Wall]:
    """A wall containing every L1 + n FA, i.e. a type-vector orthogonal to both."""
    comp = lt.orthogonal_complement(l1)
    coords = il.kernel_basis([lt.inner(b, fa) for b in comp.ambient_basis])
    sub = lt.NegDefSublattice.spanned_by(comp.to_ambient(c) for c in coords)
    if spec.lower_norm > -1:
        return None
    for x in lt.short_vectors(sub, spec.lower_norm, -1):
        if is_of_type(x, spec):
            return Wall(_representative(x), spec)
    return None


def _perturbation_directions(spec: WallSpec, count: int) -> Iterator[Tuple[ClassVector, int]]:
    """-E8 classes u orthogonal to no E8 vector of the wall type, with max |<eta, u>|.

    u is given by its pairings with e1..e8, namely -(1, k, k^2, ..., k^7) for
    k = 2, 3, ...; a candidate is kept only if it is checked to be regular.
    """
    e8_inv = il.integer_inverse(lt.E8_GRAM)
    short = lt.short_vectors(lt.E8_BLOCK, spec.lower_norm, -1) if spec.lower_norm <= -1 else []
    k = 2
    found = 0
    while found < count:
        pairings = [-(k ** i) for i in range(8)]
        u = ClassVector((0, 0, *il.matvec(e8_inv, pairings)))
        values = [abs(lt.inner(u, x)) for x in short]
        if all(values):
            found += 1
            yield u, max(values, default=0)
        k += 1


def construct_polarization(L1, FA: Sequence[int], spec: WallSpec,
                           budget: PolarizationBudget = PolarizationBudget()) -> Polarization:
    """H = L0 + n FA off every wall of the given type, with n > FA.L0 and H^2 > 0.

    First tries L0 = L1 with n = FA.L1 + 1, ..., FA.L1 + budget.n. If all of
    those sit on walls, fixes n0 = FA.L1 + 2 and perturbs L1 by w = u / q,
    where u is a regular direction in -E8 and q starts just above the largest
    |<eta, u>| over E8 vectors of the wall type (so no such eta can pair to a
    multiple of q). Candidates need w.FA < 1 and (L1 + w)^2 > 0; the first
    with (L1 + w) + n0 FA off-wall gives L0 = q (L1 + w) and n = q n0.
    """
    L1 = L1 if isinstance(L1, AmpleClass) else AmpleClass(ClassVector(L1))
    fa = ClassVector(FA)
    if lt.norm(fa) != 0:
        raise ValueError("half-pencil class must be isotropic")
    if not lt.is_primitive(fa):
        raise ValueError("half-pencil class must be primitive")
    base = lt.inner(fa, L1.H)
    if base <= 0:
        raise ValueError("need FA.L1 > 0")
    hits = []
    common = _common_wall(L1.H, fa, spec)
    direct = range(base + 1, base + budget.n + 1) if common is None else range(0)
    if common is not None:
        hits.append({"H": list(L1.H), "xi": list(common.xi), "all_n": True})

    for n in direct:
        h = L1.H + n * fa
        wall = on_wall(h, spec)
        if wall is None:
            return _finish(L1.H, n, fa, spec, {"path": "direct", "attempts": len(hits) + 1,
                                               "walls_hit": hits})
        hits.append({"H": list(h), "xi": list(wall.xi)})

    n0 = base + 2
    for u, top in _perturbation_directions(spec, budget.directions):
        q0 = max(2, top + 1)
        for q in range(q0, q0 + budget.q):
            # q (L1 + w) with w = u / q
            scaled = q * L1.H + u
            if not lt.inner(u, fa) < q:  # w.FA < 1
                continue
            if lt.norm(scaled) <= 0:
                continue
            h = scaled + (q * n0) * fa
            wall = on_wall(h, spec)
            if wall is None:
                report = {"path": "perturbed", "n0": n0, "q": q, "w_numerator": list(u),
                          "attempts": len(hits) + 1, "walls_hit": hits}
                return _finish(scaled, q * n0, fa, spec, report)
            hits.append({"H": list(h), "xi": list(wall.xi)})
    raise PolarizationExhausted("no off-wall polarization within budget",
                                {"L1": list(L1.H), "FA": list(fa), "walls_hit": hits,
                                 "budget": vars(budget)})


def _finish(L0: ClassVector, n: int, fa: ClassVector, spec: WallSpec, report: dict) -> Polarization:
    h = L0 + n * fa
    fa_l0 = lt.inner(fa, L0)
    h2 = lt.norm(L0) + 2 * n * fa_l0
    if not n > fa_l0:
        raise AssertionError("polarization: n > FA.L0 failed")
    if h2 != lt.norm(h) or h2 <= 0:
        raise AssertionError("polarization: H^2 > 0 failed")
    if walls_through(h, spec):
        raise AssertionError("polarization: H lies on a wall")
    report = dict(report, FA_dot_L0=fa_l0, H_squared=h2, ample_assumed=True)
    return Polarization(L0, n, h, report)
