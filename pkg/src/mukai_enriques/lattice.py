"""Arithmetic on the rank-10 even unimodular lattice H + (-E8).

Coordinates are always taken in the fixed basis (sigma, f, e1, ..., e8):
(sigma, f) spans the hyperbolic plane with sigma^2 = f^2 = 0, sigma.f = 1, and
e1..e8 are simple roots of -E8 in Bourbaki labelling

    e1 - e3 - e4 - e5 - e6 - e7 - e8
              |
              e2

so that <e_i, e_i> = -2 and <e_i, e_j> = 1 exactly on Dynkin edges.
"""

from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

from . import intlinalg as il

RANK = 10
E8_EDGES = ((1, 3), (3, 4), (2, 4), (4, 5), (5, 6), (6, 7), (7, 8))


def _build_gram() -> Tuple[Tuple[int, ...], ...]:
    g = [[0] * RANK for _ in range(RANK)]
    g[0][1] = g[1][0] = 1
    for i in range(2, RANK):
        g[i][i] = -2
    for a, b in E8_EDGES:
        g[a + 1][b + 1] = g[b + 1][a + 1] = 1
    return tuple(tuple(row) for row in g)


GRAM = _build_gram()
E8_GRAM = tuple(row[2:] for row in GRAM[2:])
# adjacency in ambient indices, used by the fast pairing
_ADJ = tuple((a + 1, b + 1) for a, b in E8_EDGES)


class ClassVector(tuple):
    """An element of H^2(X, Z)_f as 10 integer coordinates.

    Behaves as an immutable tuple with vector-space arithmetic: ``+``, ``-``
    and integer ``*`` act coordinatewise (not as tuple concatenation).
    """

    __slots__ = ()

    def __new__(cls, coords: Iterable[int]):
        coords = tuple(coords)
        if len(coords) != RANK:
            raise ValueError(f"expected {RANK} coordinates, got {len(coords)}")
        if not all(isinstance(c, int) and not isinstance(c, bool) for c in coords):
            raise TypeError("coordinates must be integers")
        return super().__new__(cls, coords)

    def __add__(self, other):
        return ClassVector(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        return ClassVector(a - b for a, b in zip(self, other))

    def __neg__(self):
        return ClassVector(-a for a in self)

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return ClassVector(k * a for a in self)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return format_vector(self)

    @property
    def e8_part(self) -> Tuple[int, ...]:
        return tuple(self[2:])

    @classmethod
    def from_parts(cls, d1: int = 0, d2: int = 0, xi: Sequence[int] = (0,) * 8) -> "ClassVector":
        """d1 * sigma + d2 * f + xi, with xi given in e1..e8 coordinates."""
        return cls((d1, d2, *xi))


def basis_vector(i: int) -> ClassVector:
    return ClassVector(int(i == j) for j in range(RANK))


ZERO = ClassVector((0,) * RANK)
SIGMA = basis_vector(0)
F = basis_vector(1)
E = tuple(basis_vector(i) for i in range(2, RANK))  # E[0] is e1


def e(i: int) -> ClassVector:
    """The simple root e_i (1-based, as in the Dynkin labelling)."""
    return E[i - 1]


def parse_vector(text: str) -> ClassVector:
    """Parse the text form ``[a0,...,a9]``."""
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError(f"class vector must be a JSON list, got {text!r}")
    return ClassVector(data)


def format_vector(x: Sequence[int]) -> str:
    return "[" + ",".join(str(a) for a in x) + "]"


# ---------------------------------------------------------------- pairing


def inner(x: Sequence[int], y: Sequence[int]) -> int:
    s = x[0] * y[1] + x[1] * y[0]
    for i in range(2, RANK):
        s -= 2 * x[i] * y[i]
    for a, b in _ADJ:
        s += x[a] * y[b] + x[b] * y[a]
    return s


def norm(x: Sequence[int]) -> int:
    return inner(x, x)


def gram_inner(gram: Sequence[Sequence[int]], x: Sequence[int], y: Sequence[int]) -> int:
    return sum(gram[i][j] * x[i] * y[j]
               for i in range(len(x)) if x[i] for j in range(len(y)) if y[j])


def content(x: Sequence[int]) -> int:
    return il.content(x)


def is_primitive(x: Sequence[int]) -> bool:
    return content(x) == 1


# ---------------------------------------------------------------- sublattices


@dataclass(frozen=True)
class NegDefSublattice:
    """A negative definite sublattice, by an ambient basis and its Gram matrix."""

    ambient_basis: Tuple[ClassVector, ...]
    gram: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if not il.is_negative_definite(self.gram):
            raise ValueError("sublattice Gram form is not negative definite")

    @classmethod
    def spanned_by(cls, vectors: Iterable[Sequence[int]]) -> "NegDefSublattice":
        basis = tuple(ClassVector(v) for v in vectors)
        gram = tuple(tuple(inner(a, b) for b in basis) for a in basis)
        return cls(basis, gram)

    @property
    def rank(self) -> int:
        return len(self.ambient_basis)

    @property
    def determinant(self) -> int:
        return il.det(self.gram)

    def to_ambient(self, coords: Sequence[int]) -> ClassVector:
        out = [0] * RANK
        for c, b in zip(coords, self.ambient_basis):
            if c:
                for i in range(RANK):
                    out[i] += c * b[i]
        return ClassVector(out)

    def coordinates(self, x: Sequence[int]) -> Tuple[int, ...]:
        """Coordinates of the ambient vector x in this basis; ValueError if x is not inside."""
        pairings = [inner(b, x) for b in self.ambient_basis]
        inv = _rational_inverse_cached(self.gram)
        coords = [sum(inv[i][j] * pairings[j] for j in range(self.rank)) for i in range(self.rank)]
        if any(c.denominator != 1 for c in coords):
            raise ValueError("vector does not lie in the sublattice")
        ints = tuple(int(c) for c in coords)
        if self.to_ambient(ints) != tuple(x):
            raise ValueError("vector does not lie in the sublattice")
        return ints


_INV_CACHE: dict = {}


def _rational_inverse_cached(gram):
    key = tuple(map(tuple, gram))
    if key not in _INV_CACHE:
        _INV_CACHE[key] = il.rational_inverse(key)
    return _INV_CACHE[key]


E8_BLOCK = NegDefSublattice(tuple(E), E8_GRAM)


def orthogonal_complement(h: Sequence[int]) -> NegDefSublattice:
    """Integral basis of h-perp, which is negative definite when h^2 > 0."""
    if norm(h) <= 0:
        raise ValueError("complement not negative definite: norm(H) must be > 0")
    functional = il.matvec(GRAM, h)
    basis = il.kernel_basis(functional)
    sub = NegDefSublattice.spanned_by(basis)
    assert sub.rank == RANK - 1
    assert all(inner(b, h) == 0 for b in sub.ambient_basis)
    return sub


def reduced(sub: NegDefSublattice) -> NegDefSublattice:
    """Same sublattice with an LLL-reduced basis."""
    c = il.lll_gram([[-a for a in row] for row in sub.gram])
    return NegDefSublattice.spanned_by(sub.to_ambient(row) for row in c)


# ---------------------------------------------------------------- primitive shift


def _primes_dividing(n: int) -> List[int]:
    n = abs(n)
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _next_prime(n: int) -> int:
    n += 1
    while n < 2 or any(n % p == 0 for p in range(2, math.isqrt(n) + 1)):
        n += 1
    return n


def _frame(sublattice: Optional[NegDefSublattice]):
    """(basis, gram, coordinate map) for a sublattice, or for the full lattice if None."""
    if sublattice is None:
        return [basis_vector(i) for i in range(RANK)], GRAM, tuple
    return list(sublattice.ambient_basis), sublattice.gram, sublattice.coordinates


def _to_ambient(basis, coords) -> ClassVector:
    return ClassVector(sum(c * b[i] for c, b in zip(coords, basis)) for i in range(RANK))


def primitive_shift(x: Sequence[int], r: int, bound: Optional[int] = None,
                    sublattice: Optional[NegDefSublattice] = E8_BLOCK) -> ClassVector:
    """Find xi in the sublattice with (x + r*xi)/l primitive, l = gcd(r, x).

    With ``bound`` M, xi also satisfies 2<x, xi> + r<xi, xi> < M. The search
    takes xi along one basis direction, k*b*b_j, with b the first admissible
    value (gcd(b, a_1) = 1) for which the inequality holds.
    """
    if r <= 0:
        raise ValueError("r must be a positive integer")
    basis, gram, coords_of = _frame(sublattice)
    n = len(basis)
    if n < 2:
        raise ValueError("rank too small")
    if bound is not None and not il.is_negative_definite(gram):
        raise ValueError("quadratic bound requires definite form")
    xc = coords_of(x)

    def q(u, v):
        return gram_inner(gram, u, v)

    def ok(xi):
        return bound is None or 2 * q(xc, xi) + r * q(xi, xi) < bound

    cx = il.content(xc)
    l = gcd(r, cx)
    if cx == 0:
        if bound is None:
            xi = [0] * n
            xi[0] = 1
        else:
            # p*b_2 + q*b_3 with distinct primes p < q
            p = 2
            while True:
                qq = _next_prime(p)
                xi = [0] * n
                xi[1], xi[2] = p, qq
                if ok(xi):
                    break
                p = qq
    else:
        a = [c // l for c in xc]
        i1 = next(i for i in range(n) if a[i] != 0)
        i2 = (i1 + 1) % n
        k = 1
        for p in _primes_dividing(a[i1]):
            if a[i2] % p != 0:
                k *= p
        b = 1
        while True:
            if gcd(b, a[i1]) == 1:
                xi = [0] * n
                xi[i2] = k * b
                if ok(xi):
                    break
            b += 1
    out = _to_ambient(basis, xi)
    shifted = ClassVector(a + r * c for a, c in zip(x, out))
    assert il.content(shifted) % l == 0
    if il.content([c // l for c in shifted]) != 1:
        raise AssertionError("primitive_shift postcondition failed: result not primitive")
    if bound is not None and not 2 * inner(x, out) + r * norm(out) < bound:
        raise AssertionError("primitive_shift postcondition failed: bound not met")
    return out


# ---------------------------------------------------------------- solve <eta, y> = m


def solve_pairing(y: Sequence[int], m: int,
                  sublattice: Optional[NegDefSublattice] = None) -> ClassVector:
    """eta with <eta, y> = m in a unimodular lattice (the full lattice by default).

    Extends y to a basis alpha_1 = y, alpha_2, ..., and combines the basis
    vectors with Bezout coefficients of the pairings <alpha_i, y>, whose gcd is
    1 by unimodularity.
    """
    basis, gram, coords_of = _frame(sublattice)
    yc = coords_of(y)
    if abs(il.det(gram)) != 1:
        raise ValueError("lattice is not unimodular")
    if il.content(yc) != 1:
        raise ValueError("primitive element required")
    u = il.unimodular_with_first_column(yc)
    alphas = [[u[i][j] for i in range(len(yc))] for j in range(len(yc))]
    pairings = [gram_inner(gram, a, yc) for a in alphas]
    g, coeffs = il.multi_ext_gcd(pairings)
    assert g == 1, "pairings of a basis with a primitive vector must be coprime"
    eta_c = [m * sum(c * a[i] for c, a in zip(coeffs, alphas)) for i in range(len(yc))]
    eta = _to_ambient(basis, eta_c)
    if inner(eta, y) != m:
        raise AssertionError("solve_pairing postcondition failed")
    return eta


# ---------------------------------------------------------------- enumeration


def _fincke_pohst(gram: Sequence[Sequence[int]], bound: int) -> List[Tuple[int, ...]]:
    """All x with x^T gram x <= bound for a positive definite integer gram."""
    n = len(gram)
    q, mu = il.ldl(gram)
    out: List[Tuple[int, ...]] = []
    x = [0] * n

    def interval(center: Fraction, rem: Fraction, qi: Fraction) -> Tuple[int, int]:
        # integers t with qi * (t + center)^2 <= rem
        t2 = rem / qi
        root = math.isqrt(t2.numerator // t2.denominator)
        lo = math.floor(-center - root) - 1
        hi = math.ceil(-center + root) + 1
        while lo <= hi and qi * (lo + center) ** 2 > rem:
            lo += 1
        while hi >= lo and qi * (hi + center) ** 2 > rem:
            hi -= 1
        return lo, hi

    def rec(i: int, rem: Fraction) -> None:
        center = sum((mu[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        lo, hi = interval(center, rem, q[i])
        for t in range(lo, hi + 1):
            x[i] = t
            used = q[i] * (t + center) ** 2
            if i == 0:
                out.append(tuple(x))
            else:
                rec(i - 1, rem - used)
        x[i] = 0

    rec(n - 1, Fraction(bound))
    return out


def short_vectors(sub: NegDefSublattice, lower: int, upper: int) -> List[ClassVector]:
    """Every element x of ``sub`` with lower <= norm(x) <= upper, sorted.

    The search runs on an LLL-reduced copy of the basis, with the completed
    squares kept as exact fractions.
    """
    if upper >= 0:
        raise ValueError("unbounded request: upper must be negative")
    if lower > upper:
        return []
    red = reduced(sub)
    pos = [[-a for a in row] for row in red.gram]
    found = set()
    for coords in _fincke_pohst(pos, -lower):
        v = red.to_ambient(coords)
        nv = norm(v)
        if lower <= nv <= upper:
            found.add(v)
    return sorted(found)


@functools.lru_cache(maxsize=None)
def e8_roots() -> Tuple[ClassVector, ...]:
    """The 240 norm -2 vectors of the -E8 block, sorted."""
    return tuple(short_vectors(E8_BLOCK, -2, -2))


# ---------------------------------------------------------------- basis changes


@dataclass(frozen=True)
class BasisChange:
    """Integral isometry given by its columns: the new basis in old coordinates."""

    transform: Tuple[Tuple[int, ...], ...]
    name: Optional[str] = None

    def __post_init__(self):
        t = self.transform
        if abs(il.det(t)) != 1:
            raise ValueError("basis change must have determinant +-1")
        if il.matmul(il.matmul(il.transpose(t), GRAM), t) != [list(r) for r in GRAM]:
            raise ValueError("basis change does not preserve the Gram form")

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], name: Optional[str] = None):
        return cls(tuple(tuple(row) for row in il.transpose(columns)), name)

    def columns(self) -> List[ClassVector]:
        return [ClassVector(col) for col in zip(*self.transform)]

    def to_new(self, x: Sequence[int]) -> ClassVector:
        """Coordinates of x in the new basis."""
        return ClassVector(il.matvec(self.inverse_matrix(), x))

    def to_old(self, x: Sequence[int]) -> ClassVector:
        return ClassVector(il.matvec(self.transform, x))

    def inverse_matrix(self) -> List[List[int]]:
        return _integer_inverse_cached(self.transform)

    def inverse(self) -> "BasisChange":
        name = None
        if self.name in _SELF_INVERSE:
            name = self.name
        elif self.name is not None:
            name = self.name + "^-1"
        return BasisChange(tuple(tuple(r) for r in self.inverse_matrix()), name)


_SELF_INVERSE = {"swap"}
_INT_INV_CACHE: dict = {}


def _integer_inverse_cached(t):
    if t not in _INT_INV_CACHE:
        _INT_INV_CACHE[t] = il.integer_inverse(t)
    return _INT_INV_CACHE[t]


def alternate_decomposition(root: Sequence[int] = None) -> BasisChange:
    """Second splitting H' + (-E8)' with sigma' = sigma and f' = sigma + f + root.

    ``root`` is a norm -2 element of the -E8 block (default e1). The new E8
    basis is e_j' = e_j - <e_j, root> sigma, the projection of the old one to
    the orthogonal complement of (sigma', f'); in particular e1' = e1 + 2 sigma.
    """
    alpha = E[0] if root is None else ClassVector(root)
    if alpha[0] or alpha[1] or norm(alpha) != -2:
        raise ValueError("alternate decomposition needs a root of the -E8 block")
    cols = [SIGMA, SIGMA + F + alpha]
    cols += [ej - inner(ej, alpha) * SIGMA for ej in E]
    name = "alternate" if alpha == E[0] else None
    return BasisChange.from_columns(cols, name)


def swap_decomposition() -> BasisChange:
    """The isometry exchanging sigma and f."""
    return BasisChange.from_columns([F, SIGMA, *E], "swap")


# ---------------------------------------------------------------- diagnostics


def hyperbolic_distance(h1: Sequence[int], h2: Sequence[int]) -> float:
    """arccosh(H.H' / |H||H'|) between rays of the positive cone (floating point)."""
    n1, n2, p = norm(h1), norm(h2), inner(h1, h2)
    if n1 <= 0 or n2 <= 0 or p <= 0:
        raise ValueError("not in positive cone")
    if p * p == n1 * n2:
        return 0.0
    return math.acosh(p / math.sqrt(n1 * n2))
