"""Small exact linear algebra over the rationals.

Everything here works on short lists of ``Fraction``/``int`` and is tuned for
dimension at most 4.  Rows are rescaled to primitive integer vectors before
elimination so that determinants and kernels stay in Python ints.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Vec = tuple  # tuple of Fraction


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


def vec(values) -> Vec:
    return tuple(to_fraction(v) for v in values)


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def sub(a: Sequence, b: Sequence) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def add(a: Sequence, b: Sequence) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def mul(t, a: Sequence) -> Vec:
    return tuple(t * x for x in a)


def neg(a: Sequence) -> Vec:
    return tuple(-x for x in a)


def is_zero(a: Sequence) -> bool:
    return all(x == 0 for x in a)


def mat_vec(m: Sequence[Sequence], x: Sequence) -> Vec:
    return tuple(dot(row, x) for row in m)


def transpose(m: Sequence[Sequence]) -> tuple:
    return tuple(zip(*m)) if m else ()


def primitive(values: Sequence) -> tuple[int, ...]:
    """Scale a rational vector by a positive factor to a primitive integer vector."""
    fr = [to_fraction(v) for v in values]
    den = lcm(*(f.denominator for f in fr)) if fr else 1
    ints = [int(f * den) for f in fr]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return tuple(ints)
    return tuple(v // g for v in ints)


def scale_factor(values: Sequence) -> Fraction:
    """Positive factor ``s`` such that ``s * values`` is primitive integer."""
    fr = [to_fraction(v) for v in values]
    den = lcm(*(f.denominator for f in fr)) if fr else 1
    g = 0
    for f in fr:
        g = gcd(g, int(f * den))
    if g == 0:
        return Fraction(1)
    return Fraction(den, g)


def det(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def cross(rows: Sequence[Sequence[int]], n: int) -> tuple[int, ...]:
    """Generalised cross product of ``n - 1`` integer rows in dimension ``n``.

    The result is orthogonal to every row and is zero exactly when the rows
    are linearly dependent.
    """
    if n == 1:
        return (1,)
    out = []
    for j in range(n):
        minor = [[row[c] for c in range(n) if c != j] for row in rows]
        d = det(minor)
        out.append(d if j % 2 == 0 else -d)
    return tuple(out)


def solve(a: Sequence[Sequence[int]], b: Sequence[int]) -> Vec | None:
    """Cramer solve of a square integer system; ``None`` when singular."""
    n = len(a)
    d = det(a)
    if d == 0:
        return None
    out = []
    for j in range(n):
        mj = [list(row) for row in a]
        for i in range(n):
            mj[i][j] = b[i]
        out.append(Fraction(det(mj), d))
    return tuple(out)


def rref(m: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form with pivot columns."""
    a = [[to_fraction(x) for x in row] for row in m]
    if not a:
        return [], []
    rows, cols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(m: Sequence[Sequence]) -> int:
    return len(rref(m)[1]) if m else 0


def nullspace(m: Sequence[Sequence], n: int) -> list[Vec]:
    """Basis of ``{x : m x = 0}`` in dimension ``n``, as primitive integer rows."""
    if not m:
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    red, pivots = rref(m)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(Fraction(v) for v in primitive(x)))
    return basis
