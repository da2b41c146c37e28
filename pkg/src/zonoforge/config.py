"""Rational vector configurations and their matroid-level data.

A Config holds an ordered multiset of N nonzero rational columns spanning
R^n (full rank), optionally an extension basis b0 and hyperplane offsets.
Columns are addressed by index 0..N-1; a "column set" is a frozenset of
indices.  Enumerations are returned in lexicographic bitmask order (subset S
ordered by sum(2^i for i in S)), which makes every listing deterministic.

Column order matters for the activity notions: the default order is index
order, and the I-relative internal activity uses the order that moves I's
columns after everything else (preserving index order within each block) --
the statements about I-internal bases need I to come last.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .errors import (
    BadB0,
    ColoopInI,
    FamilyNotClosed,
    MissingB0,
    NotIndependent,
    RankDeficient,
    ZeroColumn,
)
from .linalg import dot, frac, matrix, nullspace, primitive_integer, rank
from .poly import HPoly, linform_product


@dataclass(frozen=True)
class Config:
    columns: tuple
    b0: tuple | None = None
    lam: tuple | None = None
    lam_b0: tuple | None = None

    def __post_init__(self):
        cols = tuple(tuple(frac(x) for x in col) for col in self.columns)
        object.__setattr__(self, "columns", cols)
        if not cols:
            raise RankDeficient(0, 0)
        n = len(cols[0])
        for i, col in enumerate(cols):
            if len(col) != n:
                raise ZeroColumn(i)  # ragged: treat as malformed column
            if all(x == 0 for x in col):
                raise ZeroColumn(i)
        r = rank(cols)
        if r != n:
            raise RankDeficient(r, n)
        if self.b0 is not None:
            b0 = tuple(tuple(frac(x) for x in col) for col in self.b0)
            object.__setattr__(self, "b0", b0)
            if len(b0) != n or any(len(col) != n for col in b0):
                raise BadB0(f"b0 must consist of {n} vectors of length {n}")
            if rank(b0) != n:
                raise BadB0("b0 must be a basis of the ambient space")
        if self.lam is not None:
            object.__setattr__(
                self, "lam", tuple(None if x is None else frac(x) for x in self.lam)
            )
            if len(self.lam) != len(cols):
                raise BadB0(f"lambda must have one offset per column ({len(cols)})")
        if self.lam_b0 is not None:
            if self.b0 is None:
                raise MissingB0()
            object.__setattr__(
                self, "lam_b0", tuple(None if x is None else frac(x) for x in self.lam_b0)
            )
            if len(self.lam_b0) != n:
                raise BadB0(f"lambda_b0 must have one offset per b0 vector ({n})")

    @property
    def n(self) -> int:
        return len(self.columns[0])

    @property
    def ncols(self) -> int:
        return len(self.columns)

    def column(self, i: int):
        return self.columns[i]

    def subset_rows(self, cols) -> tuple:
        """The chosen columns as matrix rows, in index order."""
        return tuple(self.columns[i] for i in sorted(cols))

    def extended(self) -> "Config":
        """The configuration with the b0 vectors appended after all columns."""
        if self.b0 is None:
            raise MissingB0()
        return Config(self.columns + self.b0)


def make_config(matrix_rows, b0_rows=None, lam=None, lam_b0=None) -> Config:
    """Build a Config from a row-major n x N matrix (columns = vectors)."""
    rows = matrix(matrix_rows)
    cols = tuple(tuple(row[j] for row in rows) for j in range(len(rows[0]) if rows else 0))
    b0 = None
    if b0_rows is not None:
        b0m = matrix(b0_rows)
        b0 = tuple(tuple(row[j] for row in b0m) for j in range(len(b0m[0]) if b0m else 0))
    return Config(cols, b0=b0, lam=lam, lam_b0=lam_b0)


# -- subset enumeration ------------------------------------------------------


def _mask_to_set(mask: int) -> frozenset:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


def set_to_mask(cols) -> int:
    return sum(1 << i for i in cols)


@lru_cache(maxsize=None)
def rank_of(c: Config, cols: frozenset) -> int:
    return rank(c.subset_rows(cols))


def is_independent(c: Config, cols) -> bool:
    cols = frozenset(cols)
    return rank_of(c, cols) == len(cols)


@lru_cache(maxsize=None)
def independents(c: Config) -> tuple:
    """All independent column sets, lexicographic bitmask order."""
    out = []
    indep = {0}
    for mask in range(1 << c.ncols):
        if mask:
            low = mask & -mask
            # downward closed: a set can only be independent if dropping its
            # lowest element leaves an independent set
            if (mask ^ low) not in indep:
                continue
        cols = _mask_to_set(mask)
        if rank_of(c, cols) == len(cols):
            indep.add(mask)
            out.append(cols)
    return tuple(out)


@lru_cache(maxsize=None)
def bases(c: Config) -> tuple:
    return tuple(s for s in independents(c) if len(s) == c.n)


def span_contains(c: Config, cols, vec) -> bool:
    rows = c.subset_rows(cols)
    return rank(rows + (tuple(frac(x) for x in vec),)) == rank(rows)


def span_le(c: Config, a, b) -> bool:
    """span(columns a) contained in span(columns b)."""
    rows_b = c.subset_rows(b)
    rb = rank(rows_b)
    return rank(rows_b + c.subset_rows(a)) == rb


# -- facet hyperplanes -------------------------------------------------------


@dataclass(frozen=True)
class Facet:
    members: frozenset        # columns lying on the hyperplane
    normal: tuple             # primitive integer normal, first nonzero positive
    mult: int                 # number of columns off the hyperplane

    def contains_all(self, cols) -> bool:
        return all(i in self.members for i in cols)


@lru_cache(maxsize=None)
def facets(c: Config) -> tuple:
    """One Facet per distinct hyperplane spanned by columns, sorted by normal."""
    seen = {}
    for sub in combinations(range(c.ncols), c.n - 1):
        rows = c.subset_rows(sub)
        if rank(rows) != c.n - 1:
            continue
        normal = primitive_integer(nullspace(rows, ncols=c.n)[0])
        if normal in seen:
            continue
        members = frozenset(
            i for i in range(c.ncols) if dot(normal, c.columns[i]) == 0
        )
        seen[normal] = Facet(members, normal, c.ncols - len(members))
    return tuple(seen[k] for k in sorted(seen))


def is_coloop(c: Config, i: int) -> bool:
    return rank_of(c, frozenset(range(c.ncols)) - {i}) < c.n


# -- activity and valuation --------------------------------------------------


def index_order(c: Config) -> tuple:
    return tuple(range(c.ncols))


def order_with_last(c: Config, i_set) -> tuple:
    """Index order with the columns of i_set moved after everything else."""
    i_set = frozenset(i_set)
    rest = [j for j in range(c.ncols) if j not in i_set]
    return tuple(rest + sorted(i_set))


def passive_set(c: Config, y, order=None) -> frozenset:
    """Columns outside y not spanned by the earlier members of y."""
    y = frozenset(y)
    order = index_order(c) if order is None else tuple(order)
    pos = {j: k for k, j in enumerate(order)}
    out = set()
    for x in range(c.ncols):
        if x in y:
            continue
        earlier = [j for j in y if pos[j] < pos[x]]
        if not span_contains(c, earlier, c.columns[x]):
            out.add(x)
    return frozenset(out)


def valuation(c: Config, y, order=None) -> int:
    return len(passive_set(c, y, order))


def valuation_histogram(c: Config, family, order=None) -> tuple:
    """Counts of members by valuation, degree 0 upward."""
    vals = [valuation(c, s, order) for s in family]
    if not vals:
        return ()
    hist = [0] * (max(vals) + 1)
    for v in vals:
        hist[v] += 1
    return tuple(hist)


def _facet_of_subbasis(c: Config, cols) -> Facet:
    """The facet spanned by a rank n-1 column set."""
    normal = primitive_integer(nullspace(c.subset_rows(cols), ncols=c.n)[0])
    for f in facets(c):
        if f.normal == normal:
            return f
    raise AssertionError("facet table is missing a spanned hyperplane")


def _is_active(c: Config, b: int, basis, pos) -> bool:
    """b in basis is internally active: b is the order-largest column off
    the hyperplane spanned by basis - {b}."""
    f = _facet_of_subbasis(c, frozenset(basis) - {b})
    outside = [x for x in range(c.ncols) if x not in f.members]
    return max(outside, key=pos.__getitem__) == b


def internal_bases(c: Config, order=None) -> tuple:
    """Bases with no internally active element (w.r.t. the given order)."""
    order = index_order(c) if order is None else tuple(order)
    pos = {j: k for k, j in enumerate(order)}
    out = []
    for b_set in bases(c):
        if not any(_is_active(c, b, b_set, pos) for b in b_set):
            out.append(b_set)
    return tuple(out)


def i_internal_bases(c: Config, i_set) -> tuple:
    """Bases with no active element inside i_set, i_set's columns placed last.

    The order is pinned to "everything else, then i_set": the structural
    facts about these bases only hold when i_set's columns come last.
    """
    i_set = frozenset(i_set)
    if not is_independent(c, i_set):
        raise NotIndependent(i_set)
    order = order_with_last(c, i_set)
    pos = {j: k for k, j in enumerate(order)}
    out = []
    for b_set in bases(c):
        if not any(_is_active(c, b, b_set, pos) for b in b_set & i_set):
            out.append(b_set)
    return tuple(out)


# -- families between the bases and all independents -------------------------


@dataclass(frozen=True)
class SemiExternalFamily:
    members: tuple = field(default=())

    def __post_init__(self):
        ordered = tuple(sorted((frozenset(m) for m in self.members), key=set_to_mask))
        object.__setattr__(self, "members", ordered)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, s) -> bool:
        return frozenset(s) in set(self.members)


def full_family(c: Config) -> SemiExternalFamily:
    return SemiExternalFamily(independents(c))


def semiexternal_close(c: Config, seeds) -> SemiExternalFamily:
    """Smallest span-closed family containing the seeds and all bases."""
    seed_sets = [frozenset(s) for s in seeds]
    for s in seed_sets:
        if not is_independent(c, s):
            raise NotIndependent(s)
    base = set(seed_sets) | set(bases(c))
    # span-containment is transitive, so one sweep reaches the fixpoint
    members = {
        j for j in independents(c) if any(span_le(c, s, j) for s in base)
    }
    return SemiExternalFamily(tuple(members))


def is_closed(c: Config, fam: SemiExternalFamily) -> bool:
    member_set = set(fam.members)
    for i_set in fam:
        for j in independents(c):
            if j not in member_set and span_le(c, i_set, j):
                return False
    return True


def ensure_family(c: Config, fam: SemiExternalFamily) -> SemiExternalFamily:
    """Validate membership, independence, all bases present, closure."""
    member_set = set(fam.members)
    for s in fam:
        if not is_independent(c, s):
            raise NotIndependent(s)
    for b in bases(c):
        if b not in member_set:
            raise FamilyNotClosed(next(iter(fam), frozenset()), b)
    for i_set in fam:
        for j in independents(c):
            if j not in member_set and span_le(c, i_set, j):
                raise FamilyNotClosed(i_set, j)
    return fam


def normal_power_condition(c: Config, fam: SemiExternalFamily):
    """Check: every non-basis independent set, all of whose facet-spanning
    extensions lie in the family, is itself in the family.

    Returns (True, None) or (False, witness).
    """
    member_set = set(fam.members)
    basis_set = set(bases(c))
    # the facet-spanning extensions of i_set are the (n-1)-element independent
    # sets whose span (always a facet hyperplane) contains i_set
    hyper = [j for j in independents(c) if len(j) == c.n - 1]
    for i_set in independents(c):
        if i_set in basis_set or i_set in member_set:
            continue
        if all(j in member_set for j in hyper if span_le(c, i_set, j)):
            return False, i_set
    return True, None


# -- greedy basis extension ---------------------------------------------------


def extend_basis(c: Config, i_set) -> frozenset:
    """Greedy completion of an independent set by the b0 vectors.

    Returns indices into the extended configuration: 0..N-1 for columns of X,
    N..N+n-1 for b0 vectors, which sort after every column of X.
    """
    if c.b0 is None:
        raise MissingB0()
    i_set = frozenset(i_set)
    if not is_independent(c, i_set):
        raise NotIndependent(i_set)
    chosen = list(c.subset_rows(i_set))
    out = set(i_set)
    taken = []
    for k, b in enumerate(c.b0):
        if rank(tuple(chosen) + tuple(taken) + (b,)) > rank(tuple(chosen) + tuple(taken)):
            out.add(c.ncols + k)
        # the span of "i_set plus all earlier b0 vectors" is what matters,
        # so every earlier b0 vector joins the spanning rows either way
        taken.append(b)
    return frozenset(out)


def subset_polynomial(c: Config, cols) -> HPoly:
    """Product of the linear forms of the chosen columns."""
    return linform_product(c.n, c.subset_rows(cols))


def extended_subset_polynomial(c: Config, cols) -> HPoly:
    """Same, but indices may address the b0 block (N..N+n-1)."""
    if any(i >= c.ncols for i in cols):
        if c.b0 is None:
            raise MissingB0()
        vecs = [
            c.columns[i] if i < c.ncols else c.b0[i - c.ncols] for i in sorted(cols)
        ]
        return linform_product(c.n, vecs)
    return subset_polynomial(c, cols)
