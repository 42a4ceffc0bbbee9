"""Exact integer linear algebra on small dense matrices.

Matrices are lists (or tuples) of rows of Python ints; vectors are sequences
of ints. Nothing here touches floating point.
"""

from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

Matrix = List[List[int]]


def ext_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def multi_ext_gcd(values: Sequence[int]) -> Tuple[int, List[int]]:
    """Return (g, coeffs) with sum(c * v) == g == gcd(values)."""
    g = 0
    coeffs: List[int] = []
    for v in values:
        g2, x, y = ext_gcd(g, v)
        coeffs = [c * x for c in coeffs] + [y]
        g = g2
    return g, coeffs


def content(v: Sequence[int]) -> int:
    g = 0
    for a in v:
        g = gcd(g, a)
    return g


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*a)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> List[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def det(a: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    m = [list(row) for row in a]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def leading_minors(a: Sequence[Sequence[int]]) -> List[int]:
    return [det([row[:k] for row in a[:k]]) for k in range(1, len(a) + 1)]


def is_negative_definite(gram: Sequence[Sequence[int]]) -> bool:
    """Sylvester: leading principal minors alternate in sign, starting negative."""
    return all((-1) ** k * m > 0 for k, m in enumerate(leading_minors(gram), 1))


def rational_inverse(a: Sequence[Sequence[int]]) -> List[List[Fraction]]:
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return [row[n:] for row in m]


def integer_inverse(a: Sequence[Sequence[int]]) -> Matrix:
    inv = rational_inverse(a)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


def unimodular_with_first_column(y: Sequence[int]) -> Matrix:
    """Unimodular U whose first column is the primitive vector y.

    Euclid on the entries of y by elementary row operations w <- E w, while
    U <- U E^-1 keeps U w == y; once w = e_1 the first column of U is y.
    """
    n = len(y)
    w = list(y)
    u = identity(n)
    if content(w) != 1:
        raise ValueError("primitive element required")
    while True:
        nz = [i for i in range(n) if w[i] != 0]
        p = min(nz, key=lambda i: (abs(w[i]), i))
        if len(nz) == 1:
            break
        for i in nz:
            if i == p:
                continue
            q = w[i] // w[p]
            if q:
                # w_i -= q w_p  =>  column p of U += q * column i
                w[i] -= q * w[p]
                for row in u:
                    row[p] += q * row[i]
    if p != 0:
        w[0], w[p] = w[p], w[0]
        for row in u:
            row[0], row[p] = row[p], row[0]
    if w[0] < 0:
        w[0] = -w[0]
        for row in u:
            row[0] = -row[0]
    assert w[0] == 1
    return u


def kernel_basis(w: Sequence[int]) -> List[List[int]]:
    """Integral basis of {x in Z^n : w . x = 0}, by column reduction of w."""
    n = len(w)
    row = list(w)
    u = identity(n)
    if not any(row):
        return [list(col) for col in zip(*u)]
    while True:
        nz = [i for i in range(n) if row[i] != 0]
        p = min(nz, key=lambda i: (abs(row[i]), i))
        if len(nz) == 1:
            break
        for i in nz:
            if i == p:
                continue
            q = row[i] // row[p]
            if q:
                # column i -= q * column p, applied to w and to U alike
                row[i] -= q * row[p]
                for r in u:
                    r[i] -= q * r[p]
    cols = [[r[j] for r in u] for j in range(n) if j != p]
    return cols


def ldl(gram: Sequence[Sequence[int]]) -> Tuple[List[Fraction], List[List[Fraction]]]:
    """Completed-square form of a positive definite Gram matrix.

    Returns (q, mu) with x^T A x = sum_i q[i] * (x_i + sum_{j>i} mu[i][j] x_j)^2.
    """
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    q: List[Fraction] = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        q[i] = a[i][i]
        if q[i] <= 0:
            raise ValueError("form is not positive definite")
        for j in range(i + 1, n):
            mu[i][j] = a[i][j] / q[i]
        for j in range(i + 1, n):
            for k in range(j, n):
                a[j][k] -= mu[i][j] * a[i][k]
                a[k][j] = a[j][k]
    return q, mu


def lll_gram(gram: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)) -> Matrix:
    """LLL-reduce a basis given only through its positive definite Gram matrix.

    Returns the integer change-of-basis C (rows = new basis vectors in terms of
    the old ones); the reduced Gram matrix is C * gram * C^T.
    """
    n = len(gram)
    g = [list(map(int, row)) for row in gram]
    c = identity(n)

    def gso():
        bstar: List[Fraction] = []
        mu = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i):
                s = Fraction(g[i][j])
                for k in range(j):
                    s -= mu[j][k] * mu[i][k] * bstar[k]
                mu[i][j] = s / bstar[j]
            b = Fraction(g[i][i])
            for k in range(i):
                b -= mu[i][k] ** 2 * bstar[k]
            bstar.append(b)
        return mu, bstar

    def rebuild() -> None:
        nonlocal g
        g = matmul(matmul(c, gram), transpose(c))

    k = 1
    mu, bstar = gso()
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                c[k] = [x - q * y for x, y in zip(c[k], c[j])]
                rebuild()
                mu, bstar = gso()
        if bstar[k] >= (delta - mu[k][k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            c[k], c[k - 1] = c[k - 1], c[k]
            rebuild()
            mu, bstar = gso()
            k = max(k - 1, 1)
    return c
