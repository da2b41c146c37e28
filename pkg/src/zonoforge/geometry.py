"""Affine side: simple hyperplane arrangements, the least map, lattice points.

An offset vector turns each column x into the hyperplane <x, u> = offset_x.
When the arrangement is simple (every k of the hyperplanes meet in
codimension k or not at all) the vertices are exactly the basis solutions,
and the space spanned by the lowest-degree parts of the point exponentials
interpolates any function on the vertex set uniquely.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .config import Config, bases, rank_of
from .errors import (
    ConsistencyError,
    DimensionMismatch,
    DuplicatePoints,
    NotSimple,
    SamplingExhausted,
    UnknownBasis,
)
from .graded import GradedSubspace
from .linalg import frac, matrix, rank, rref, solve_square
from .poly import HPoly, monomials, multi_factorial

MAX_SAMPLING_TRIES = 100


@dataclass(frozen=True)
class Arrangement:
    config: Config
    offsets: tuple
    vertices: tuple  # ((basis frozenset, point tuple), ...) in basis order
    simple: bool = True  # constructors only ever return simple instances


def _simplicity_witness(c: Config, offsets) -> tuple | None:
    """First set of hyperplanes meeting in too small a codimension, if any.

    A set S is fine when the system <x_s, u> = offset_s is either
    inconsistent or has solution set of codimension exactly #S.  Sets of
    size n+1 can never be fine while consistent, so checking sizes up to
    n+1 certifies simplicity of the whole arrangement.
    """
    n = c.n
    for size in range(2, min(c.ncols, n + 1) + 1):
        for subset in itertools.combinations(range(c.ncols), size):
            rows = [c.columns[j] for j in subset]
            aug = [row + (offsets[j],) for row, j in zip(rows, subset)]
            r_plain = rank(matrix(rows))
            if rank(matrix(aug)) == r_plain and r_plain < size:
                return subset
    return None


def make_arrangement(c: Config, offsets=None, seed: int = 0) -> Arrangement:
    """Build the arrangement, sampling any missing offsets until simple.

    `offsets` may be None (use the offsets stored on the configuration,
    sampling whatever they leave open), or a sequence with None holes; the
    fixed entries are kept verbatim.  A fully fixed non-simple vector raises
    NotSimple immediately instead of burning retries.
    """
    if offsets is None:
        offsets = list(c.lam) if c.lam is not None else [None] * c.ncols
    else:
        offsets = list(offsets)
        if len(offsets) != c.ncols:
            raise DimensionMismatch(
                f"{len(offsets)} offsets for {c.ncols} columns"
            )
    fixed = [frac(v) if v is not None else None for v in offsets]
    holes = [i for i, v in enumerate(fixed) if v is None]

    rng = random.Random(seed)
    tries = MAX_SAMPLING_TRIES if holes else 1
    for _ in range(tries):
        lam = list(fixed)
        for i in holes:
            lam[i] = Fraction(rng.randint(1, 1000 * c.ncols * (i + 1)))
        witness = _simplicity_witness(c, lam)
        if witness is None:
            return _finish_arrangement(c, tuple(lam))
    if holes:
        raise SamplingExhausted(tries)
    raise NotSimple(witness)


def _finish_arrangement(c: Config, lam: tuple) -> Arrangement:
    verts = []
    seen = {}
    for b in bases(c):
        cols = sorted(b)
        a = matrix([c.columns[j] for j in cols])
        rhs = tuple(lam[j] for j in cols)
        point = solve_square(a, rhs)
        if point is None:
            raise ConsistencyError(f"basis {cols} gave a singular vertex system")
        if point in seen:
            # two bases sharing a vertex means too many hyperplanes through it
            raise ConsistencyError(
                f"bases {sorted(seen[point])} and {cols} share a vertex "
                "in an arrangement that passed the simplicity check"
            )
        seen[point] = b
        verts.append((b, point))
    return Arrangement(config=c, offsets=lam, vertices=tuple(verts))


def vertex_set(arr: Arrangement, basis_family) -> tuple:
    """Vertices of the given bases, sorted; unknown bases are an input error."""
    lookup = dict(arr.vertices)
    points = []
    for b in basis_family:
        key = frozenset(b)
        if key not in lookup:
            raise UnknownBasis(key)
        points.append(lookup[key])
    return tuple(sorted(points))


def _taylor_row(point, nvars: int, dmax: int) -> tuple:
    row = []
    for d in range(dmax + 1):
        for exp in monomials(nvars, d):
            val = Fraction(1)
            for x, e in zip(point, exp):
                val *= frac(x) ** e
            row.append(val / multi_factorial(exp))
    return tuple(row)


def least_space(points, extra: int = 0) -> GradedSubspace:
    """Span of the lowest-degree parts of the exponentials of the points.

    Row-reduce the truncated Taylor matrix of the point exponentials; the
    pivot of each reduced row sits in its lowest nonzero degree block, so
    that block is the row's least part.  `extra` pads the truncation degree;
    the result must not depend on it (truncation stability).
    """
    pts = [tuple(frac(x) for x in p) for p in points]
    for i, p in enumerate(pts):
        if p in pts[:i]:
            raise DuplicatePoints(p)
    if not pts:
        return GradedSubspace.zero(0)
    nvars = len(pts[0])
    if any(len(p) != nvars for p in pts):
        raise DimensionMismatch("points of mixed dimension")

    dmax = max(len(pts) - 1, 0) + extra
    while True:
        rows = matrix([_taylor_row(p, nvars, dmax) for p in pts])
        reduced, pivots = rref(rows)
        if len(pivots) == len(pts):
            break
        dmax += 1  # cannot happen for distinct points, but stay safe

    block_of = []
    offsets = []
    start = 0
    for d in range(dmax + 1):
        size = len(monomials(nvars, d))
        offsets.append((start, start + size))
        block_of.extend([d] * size)
        start += size

    leasts = []
    for row, piv in zip(reduced, pivots):
        d = block_of[piv]
        lo, hi = offsets[d]
        leasts.append(HPoly.from_coeff_vector(nvars, d, row[lo:hi]))
    space = GradedSubspace.from_spanning(nvars, leasts)
    if space.dim() != len(pts):
        raise ConsistencyError(
            f"least parts of {len(pts)} points span only {space.dim()} dimensions"
        )
    return space


def restriction_certificate(points, space: GradedSubspace) -> dict:
    """Invertibility of evaluation of the space's basis on the point set."""
    pts = [tuple(frac(x) for x in p) for p in points]
    for i, p in enumerate(pts):
        if p in pts[:i]:
            raise DuplicatePoints(p)
    polys = list(space.basis_polys())
    square = len(polys) == len(pts)
    invertible = False
    if square and pts:
        ev = matrix([[q.evaluate(p) for q in polys] for p in pts])
        invertible = rank(ev) == len(pts)
    elif square:
        invertible = True
    return {
        "n_points": len(pts),
        "dim_space": len(polys),
        "square": square,
        "invertible": invertible,
        "passed": square and invertible,
    }


def is_unimodular(c: Config) -> bool:
    """Integer entries and every basis determinant of absolute value 1."""
    from .linalg import det

    for v in c.columns:
        if any(x.denominator != 1 for x in v):
            return False
    for b in bases(c):
        d = det(matrix([c.columns[j] for j in sorted(b)]))
        if d not in (1, -1):
            return False
    return True


def _phase1_feasible(c: Config, target) -> tuple | None:
    """Exact phase-1 simplex for  X w = target,  0 <= w <= 1.

    Standard form: w_j + s_j = 1 turns the box into equalities; one
    artificial variable per row; Bland's rule on both choices, so the walk
    terminates.  Returns the w-vector on feasibility, None otherwise.
    """
    n, ncols = c.n, c.ncols
    m = n + ncols
    width = 2 * ncols + m  # w block, slack block, artificial block
    rows = []
    for i in range(n):
        coeffs = [c.columns[j][i] for j in range(ncols)]
        rhs = frac(target[i])
        if rhs < 0:
            coeffs = [-x for x in coeffs]
            rhs = -rhs
        rows.append(coeffs + [Fraction(0)] * ncols + [Fraction(0)] * m + [rhs])
    for j in range(ncols):
        row = [Fraction(0)] * width + [Fraction(1)]
        row[j] = Fraction(1)
        row[ncols + j] = Fraction(1)
        rows.append(row)
    for i in range(m):
        rows[i][2 * ncols + i] = Fraction(1)
    basis = [2 * ncols + i for i in range(m)]

    # reduced costs for minimizing the artificial sum
    red = [Fraction(0)] * (width + 1)
    for i in range(m):
        for j in range(width + 1):
            red[j] -= rows[i][j]
    for i in range(m):
        red[2 * ncols + i] += Fraction(1)

    while True:
        enter = next(
            (j for j in range(width) if j not in basis and red[j] < 0), None
        )
        if enter is None:
            break
        pivot_i = None
        best = None
        for i in range(m):
            if rows[i][enter] > 0:
                ratio = rows[i][width] / rows[i][enter]
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[pivot_i]
                ):
                    best = ratio
                    pivot_i = i
        if pivot_i is None:
            raise ConsistencyError("phase-1 objective unbounded below")
        piv = rows[pivot_i][enter]
        rows[pivot_i] = [x / piv for x in rows[pivot_i]]
        for i in range(m):
            if i != pivot_i and rows[i][enter] != 0:
                f = rows[i][enter]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[pivot_i])]
        if red[enter] != 0:
            f = red[enter]
            red = [a - f * b for a, b in zip(red, rows[pivot_i])]
        basis[pivot_i] = enter

    if -red[width] != 0:  # leftover artificial mass: infeasible
        return None
    w = [Fraction(0)] * ncols
    for i, b in enumerate(basis):
        if b < ncols:
            w[b] = rows[i][width]
    return tuple(w)


def zonotope_lattice(c: Config):
    """(True, sorted integer points of the column-sum zonotope) when the
    configuration is unimodular, else (False, None)."""
    if not is_unimodular(c):
        return False, None
    lo = [sum(min(v[i], 0) for v in c.columns) for i in range(c.n)]
    hi = [sum(max(v[i], 0) for v in c.columns) for i in range(c.n)]
    points = []
    for candidate in itertools.product(
        *[range(int(a), int(b) + 1) for a, b in zip(lo, hi)]
    ):
        w = _phase1_feasible(c, candidate)
        if w is None:
            continue
        # re-check the witness; the simplex and the witness must agree
        for i in range(c.n):
            total = sum(c.columns[j][i] * w[j] for j in range(c.ncols))
            if total != candidate[i]:
                raise ConsistencyError(f"simplex witness fails at point {candidate}")
        if any(x < 0 or x > 1 for x in w):
            raise ConsistencyError(f"simplex witness out of the box at {candidate}")
        points.append(candidate)
    return True, tuple(sorted(points))
