"""Independent brute-force oracles used to cross-check the fast code paths.

None of these touch Fincke-Pohst, LLL or the sublattice machinery. E8 vectors
come from the standard model in R^8 (all coordinates in Z or all in Z + 1/2,
even coordinate sum), mapped onto the simple-root basis e1..e8.
"""

from __future__ import annotations

import functools
import math
from collections import defaultdict
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from . import intlinalg as il
from . import lattice as lt
from .lattice import ClassVector

# Bourbaki simple roots of E8, doubled so that every entry is an integer
_ROOTS_X2 = (
    (1, -1, -1, -1, -1, -1, -1, 1),
    (2, 2, 0, 0, 0, 0, 0, 0),
    (-2, 2, 0, 0, 0, 0, 0, 0),
    (0, -2, 2, 0, 0, 0, 0, 0),
    (0, 0, -2, 2, 0, 0, 0, 0),
    (0, 0, 0, -2, 2, 0, 0, 0),
    (0, 0, 0, 0, -2, 2, 0, 0),
    (0, 0, 0, 0, 0, -2, 2, 0),
)


@functools.lru_cache(maxsize=None)
def _to_roots():
    # columns are the doubled simple roots; returns (4 * inverse) as integers
    inv = il.rational_inverse(il.transpose(_ROOTS_X2))
    return [[int(4 * x) for x in row] for row in inv]


def _doubled_points(max_sq: int) -> List[Tuple[int, ...]]:
    """Doubled E8 vectors y (same parity, sum = 0 mod 4) with 0 < |y|^2 <= max_sq."""
    out = []
    for parity in (0, 1):
        cur: List[int] = []

        def rec(i: int, rem: int) -> None:
            if i == 8:
                if sum(cur) % 4 == 0 and any(cur):
                    out.append(tuple(cur))
                return
            top = math.isqrt(rem)
            for a in range(-top, top + 1):
                if a % 2 == parity:
                    cur.append(a)
                    rec(i + 1, rem - a * a)
                    cur.pop()

        rec(0, max_sq)
    return out


@functools.lru_cache(maxsize=8)
def e8_vectors(max_norm: int) -> Tuple[ClassVector, ...]:
    """All nonzero v in the -E8 block with -max_norm <= v^2 < 0, in basis coordinates."""
    inv = _to_roots()
    vecs = []
    for y in _doubled_points(4 * max_norm):
        # y and the roots are both doubled; the inverse is scaled by 4
        coords = [sum(a * b for a, b in zip(row, y)) for row in inv]
        if any(c % 4 for c in coords):
            raise AssertionError("standard-model point outside the root lattice")
        vecs.append(ClassVector((0, 0, *(c // 4 for c in coords))))
    return tuple(sorted(vecs))


def e8_count(norm: int) -> int:
    """Number of -E8 vectors of the given (negative) norm."""
    return sum(1 for v in e8_vectors(-norm) if lt.norm(v) == norm)


def _majorant_bounds(h: Sequence[int], n: int) -> Tuple[int, int]:
    """Bounds on |a|, |b| for x = a sigma + b f + eta with x.h = 0 and -x^2 <= n.

    On h-perp the form P(x) = -x^2 + 2 (x.h)^2 / h^2 is positive definite
    with inverse Gram -G^-1 + 2 h h^T / h^2, and x_i^2 <= P(x) (P^-1)_ii.
    """
    hn = lt.norm(h)
    ginv = il.rational_inverse(lt.GRAM)
    out = []
    for i in (0, 1):
        pii = -ginv[i][i] + Fraction(2 * h[i] * h[i], hn)
        out.append(math.isqrt(math.floor(n * pii)))  # floor(sqrt(n pii))
    return out[0], out[1]


def walls_oracle(h: Sequence[int], r: int, delta: int) -> List[ClassVector]:
    """Sorted +-representatives xi with xi.h = 0 and -(r^2/4) delta <= xi^2 < 0."""
    h = ClassVector(h)
    if lt.norm(h) <= 0:
        raise ValueError("oracle needs h^2 > 0")
    n = (r * r * delta) // 4
    amax, bmax = _majorant_bounds(h, n)
    eta_max = n + 2 * amax * bmax
    by_key: Dict[Tuple[int, int], List[ClassVector]] = defaultdict(list)
    for eta in e8_vectors(eta_max):
        by_key[(lt.inner(eta, h), lt.norm(eta))].append(eta)
    by_key[(0, 0)].append(lt.ZERO)
    s_h, f_h = lt.inner(lt.SIGMA, h), lt.inner(lt.F, h)
    found = set()
    for a in range(-amax, amax + 1):
        for b in range(-bmax, bmax + 1):
            target = -(a * s_h + b * f_h)
            for eta_norm in range(-eta_max, 1):
                total = 2 * a * b + eta_norm
                if not (-n <= total < 0):
                    continue
                for eta in by_key.get((target, eta_norm), ()):
                    x = ClassVector((a, b, *eta[2:]))
                    first = next(c for c in x if c)
                    found.add(x if first > 0 else -x)
    return sorted(found)


def chern_pairing(v, w) -> Fraction:
    """-integral of v^dual * w, multiplying graded pieces (deg 0, deg 2, deg 4).

    Mukai vectors are (r, c1, -s/2 rho) with the point class integrating to 1;
    dualizing flips the sign of the degree-2 piece.
    """
    def graded(u):
        return Fraction(u.r), ClassVector(u.c1), Fraction(-u.s, 2)

    r1, c1, p1 = graded(v)
    r2, c2, p2 = graded(w)
    deg4 = r1 * p2 + lt.inner(-c1, c2) + p1 * r2
    return -deg4


def in_span_primitive(coords: Sequence[int]) -> bool:
    """Primitivity by checking that no x/p is integral for p up to max |x_i|."""
    if not any(coords):
        return False
    top = max(abs(c) for c in coords)
    return not any(all(Fraction(c, p).denominator == 1 for c in coords) for p in range(2, top + 1))
