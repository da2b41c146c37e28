"""Dense exact linear algebra over the rationals.

A vector is a tuple of fractions.Fraction, a matrix a tuple of equal-length
row tuples.  Everything is exact; no floats enter anywhere.  rref() is fully
canonical (leading ones, pivot columns cleared above and below), so two row
spaces are equal iff their reduced forms are identical tuples.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import DimensionMismatch

Vector = tuple
Matrix = tuple


def frac(x) -> Fraction:
    # floats are banned: they would silently poison the exact pipeline
    if isinstance(x, float):
        raise TypeError("floating point input is not allowed")
    return Fraction(x)


def vector(entries) -> Vector:
    return tuple(frac(x) for x in entries)


def matrix(rows) -> Matrix:
    out = tuple(vector(r) for r in rows)
    widths = {len(r) for r in out}
    if len(widths) > 1:
        raise DimensionMismatch(f"ragged rows of lengths {sorted(widths)}")
    return out


def identity(n: int) -> Matrix:
    one, zero = Fraction(1), Fraction(0)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def transpose(m: Matrix, ncols: int | None = None) -> Matrix:
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(tuple(row[j] for row in m) for j in range(len(m[0])))


def dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def mat_vec(m: Matrix, v) -> Vector:
    return tuple(dot(row, v) for row in m)


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and the pivot column indices."""
    rows = [list(r) for r in m]
    if not rows:
        return (), ()
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pin = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pin is None:
            continue
        rows[r], rows[pin] = rows[pin], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return tuple(tuple(row) for row in rows), tuple(pivots)


def row_basis(m: Matrix) -> Matrix:
    """Canonical basis of the row space: RREF with zero rows dropped."""
    red, piv = rref(m)
    return red[: len(piv)]


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def nullspace(m: Matrix, ncols: int | None = None) -> Matrix:
    """Canonical basis of the right kernel, as rows.

    ncols is required when m has no rows (the kernel is then everything).
    """
    if m:
        ncols = len(m[0])
    elif ncols is None:
        raise DimensionMismatch("ncols is required for a matrix with no rows")
    red, piv = rref(m)
    pivset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(piv):
            v[p] = -red[r][f]
        basis.append(tuple(v))
    return row_basis(tuple(basis))


def solve_square(a: Matrix, b) -> Vector | None:
    """Unique solution of a x = b for square a; None if a is singular."""
    n = len(a)
    if any(len(row) != n for row in a) or len(b) != n:
        raise DimensionMismatch("solve_square needs a square system")
    aug = tuple(tuple(row) + (bi,) for row, bi in zip(a, b))
    red, piv = rref(aug)
    if len(piv) < n or (piv and piv[-1] == n):
        return None
    return tuple(red[i][n] for i in range(n))


def det(a: Matrix) -> Fraction:
    n = len(a)
    if any(len(row) != n for row in a):
        raise DimensionMismatch("determinant of a non-square matrix")
    rows = [list(r) for r in a]
    d = Fraction(1)
    for c in range(n):
        pin = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pin is None:
            return Fraction(0)
        if pin != c:
            rows[c], rows[pin] = rows[pin], rows[c]
            d = -d
        d *= rows[c][c]
        inv = 1 / rows[c][c]
        rows[c] = [x * inv for x in rows[c]]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return d


def primitive_integer(v) -> tuple[int, ...]:
    """Scale a nonzero rational vector to coprime integers, first nonzero positive."""
    denom = 1
    for x in v:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def in_row_space(m: Matrix, v) -> bool:
    base = row_basis(m)
    return len(row_basis(base + (tuple(v),))) == len(base)
