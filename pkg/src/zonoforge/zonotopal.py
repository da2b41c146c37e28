"""Bundles of zonotopal spaces attached to a configuration.

Each bundle pairs a primal space (span of column-subset products) with two
ideals: the power ideal cut out by facet-normal powers, whose differential
kernel must reproduce the primal space, and the cover ideal generated by the
products over subsets meeting every member of the relevant basis family.
Four kinds exist: central, external, semi-external (relative to a span-closed
family between the bases and all independents) and semi-internal (relative to
an independent set whose columns are moved last in the activity order).

Every constructor computes the Hilbert function three ways -- valuation
histogram, power-ideal quotient, primal-space dimensions -- and raises
ConsistencyError if they disagree: the artifact is its own theorem checker.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache

from .config import (
    Config,
    SemiExternalFamily,
    bases,
    ensure_family,
    extend_basis,
    extended_subset_polynomial,
    facets,
    full_family,
    i_internal_bases,
    independents,
    internal_bases,
    is_coloop,
    is_independent,
    order_with_last,
    passive_set,
    rank_of,
    set_to_mask,
    subset_polynomial,
    valuation_histogram,
)
from .errors import ColoopInI, ConditionFails, ConsistencyError, MissingB0, NotIndependent
from .graded import GradedSubspace, IdealGens, add, hilbert_quotient, intersect, kernel
from .linalg import rank as mat_rank
from .poly import HPoly, pair, perp_space_gens
from .config import normal_power_condition, span_le


@dataclass(frozen=True)
class Bundle:
    kind: str
    config: Config
    p_space: GradedSubspace
    q_basis: tuple | None
    i_ideal: IdealGens
    j_ideal: IdealGens
    hilbert_valuation: tuple
    hilbert_algebraic: tuple
    ieps_ideal: IdealGens | None = None
    family: SemiExternalFamily | None = None
    i_set: frozenset | None = None
    b_minus: tuple | None = None
    order: tuple | None = None

    def dim(self) -> int:
        return self.p_space.dim()


def _check(cond: bool, msg: str):
    if not cond:
        raise ConsistencyError(msg)


def stabilization_cap(c: Config) -> int:
    return 2 * (c.ncols + c.n) + 2


def minimal_hitting_sets(sets) -> tuple:
    """Inclusion-minimal sets meeting every member of the family.

    Branch on the smallest still-unmet member; prune branches that already
    contain a recorded hitting set (their completions cannot be minimal).
    For the empty family the empty set is the unique answer; a family with
    an empty member has no hitting set at all.
    """
    family = [frozenset(s) for s in sets]
    if any(not s for s in family):
        return ()
    if not family:
        return (frozenset(),)
    found: set = set()

    def branch(chosen: frozenset, remaining):
        if any(h <= chosen for h in found):
            return
        rem = [s for s in remaining if not (s & chosen)]
        if not rem:
            found.add(chosen)
            return
        pivot = min(rem, key=lambda s: (len(s), sorted(s)))
        for e in sorted(pivot):
            branch(chosen | {e}, rem)

    branch(frozenset(), family)
    minimal = [
        h
        for h in found
        if all(any(not (s & (h - {e})) for s in family) for e in h)
    ]
    return tuple(sorted(minimal, key=set_to_mask))


def _delete(c: Config, col: int) -> Config:
    return Config(tuple(v for j, v in enumerate(c.columns) if j != col))


def _augment(c: Config, extra_cols) -> Config:
    return Config(c.columns + tuple(c.columns[j] for j in sorted(extra_cols)))


@lru_cache(maxsize=None)
def central_space(c: Config) -> GradedSubspace:
    """Span of the products over short subsets (complement still spans)."""
    everything = frozenset(range(c.ncols))
    polys = []
    for mask in range(1 << c.ncols):
        y = frozenset(i for i in range(c.ncols) if mask >> i & 1)
        if rank_of(c, everything - y) == c.n:
            polys.append(subset_polynomial(c, y))
    return GradedSubspace.from_spanning(c.n, polys)


@lru_cache(maxsize=None)
def full_span_space(c: Config) -> GradedSubspace:
    """Span of the products over all column subsets, long ones included."""
    polys = []
    for mask in range(1 << c.ncols):
        y = frozenset(i for i in range(c.ncols) if mask >> i & 1)
        polys.append(subset_polynomial(c, y))
    return GradedSubspace.from_spanning(c.n, polys)


def _normal_power(c: Config, facet, power: int) -> HPoly:
    return HPoly.linear_form(facet.normal) ** power


def central_i_gens(c: Config) -> IdealGens:
    return IdealGens.make(c.n, [_normal_power(c, f, f.mult) for f in facets(c)])


def external_i_gens(c: Config) -> IdealGens:
    return IdealGens.make(c.n, [_normal_power(c, f, f.mult + 1) for f in facets(c)])


def internal_i_gens(c: Config) -> IdealGens:
    return IdealGens.make(c.n, [_normal_power(c, f, f.mult - 1) for f in facets(c)])


def cocircuit_gens(c: Config) -> IdealGens:
    # the complements of the facet flats are exactly the minimal subsets
    # meeting every basis, so they generate the whole long-subset ideal
    everything = frozenset(range(c.ncols))
    return IdealGens.make(
        c.n, [subset_polynomial(c, everything - f.members) for f in facets(c)]
    )


@lru_cache(maxsize=None)
def central(c: Config) -> Bundle:
    qb = tuple((b, subset_polynomial(c, passive_set(c, b))) for b in bases(c))
    p_from_q = GradedSubspace.from_spanning(c.n, [q for _, q in qb])
    p_space = central_space(c)
    _check(p_from_q == p_space, "central: passive-set products fail to span the short-set space")
    i_gens = central_i_gens(c)
    j_gens = cocircuit_gens(c)
    h_val = valuation_histogram(c, bases(c))
    h_alg = hilbert_quotient(i_gens, cap=stabilization_cap(c))
    _check(h_val == h_alg == p_space.hilbert(), "central: Hilbert functions disagree")
    _check(p_space.dim() == len(bases(c)), "central: dimension is not the basis count")
    return Bundle(
        kind="central",
        config=c,
        p_space=p_space,
        q_basis=qb,
        i_ideal=i_gens,
        j_ideal=j_gens,
        hilbert_valuation=h_val,
        hilbert_algebraic=h_alg,
    )


def _family_short_space(c: Config, fam: SemiExternalFamily) -> GradedSubspace:
    """Span of p_Y over subsets Y missing at least one family member."""
    shorts = set()
    for i_set in fam:
        free = sorted(frozenset(range(c.ncols)) - i_set)
        for mask in range(1 << len(free)):
            shorts.add(frozenset(free[k] for k in range(len(free)) if mask >> k & 1))
    return GradedSubspace.from_spanning(c.n, [subset_polynomial(c, y) for y in shorts])


def _span_key(c: Config, cols):
    from .linalg import row_basis

    return row_basis(c.subset_rows(cols))


def semi_external(c: Config, fam: SemiExternalFamily) -> Bundle:
    if c.b0 is None:
        raise MissingB0()
    fam = ensure_family(c, fam)
    member_set = set(fam.members)

    qb = tuple((s, subset_polynomial(c, passive_set(c, s))) for s in fam)
    p_from_q = GradedSubspace.from_spanning(c.n, [q for _, q in qb])
    p_space = _family_short_space(c, fam)
    _check(p_from_q == p_space, "semi-external: passive-set products fail to span")

    # power ideal: external facet powers, plus for every span S missed by the
    # family all degree-#(X off S) polynomials constant along S
    gens = [_normal_power(c, f, f.mult + 1) for f in facets(c)]
    missing = {}
    for i_set in independents(c):
        if i_set not in member_set:
            missing.setdefault(_span_key(c, i_set), i_set)
    for key in sorted(missing, key=lambda m: (len(m), m)):
        rep = missing[key]
        off = sum(
            0 if span_le(c, {x}, rep) else 1 for x in range(c.ncols)
        ) if rep else c.ncols
        gens.extend(perp_space_gens(c.n, key, off))
    i_gens = IdealGens.make(c.n, gens)

    # pure-power variant: raise the exponent exactly on facets the family spans
    eps_gens = []
    for f in facets(c):
        spanned = any(
            s in member_set
            for s in independents(c)
            if len(s) == c.n - 1 and s <= f.members
        )
        eps_gens.append(_normal_power(c, f, f.mult + (1 if spanned else 0)))
    ieps = IdealGens.make(c.n, eps_gens)

    cover_family = [extend_basis(c, s) for s in fam]
    j_gens = IdealGens.make(
        c.n,
        [extended_subset_polynomial(c, y) for y in minimal_hitting_sets(cover_family)],
    )

    h_val = valuation_histogram(c, fam.members)
    h_alg = hilbert_quotient(i_gens, cap=stabilization_cap(c))
    _check(h_val == h_alg == p_space.hilbert(), "semi-external: Hilbert functions disagree")
    _check(p_space.dim() == len(fam), "semi-external: dimension is not the family size")
    return Bundle(
        kind="semi_external",
        config=c,
        p_space=p_space,
        q_basis=qb,
        i_ideal=i_gens,
        j_ideal=j_gens,
        hilbert_valuation=h_val,
        hilbert_algebraic=h_alg,
        ieps_ideal=ieps,
        family=fam,
    )


def external(c: Config) -> Bundle:
    return replace(semi_external(c, full_family(c)), kind="external")


def semi_internal_i_gens(c: Config, i_set) -> IdealGens:
    """Central powers plus the once-reduced powers on facets not containing I."""
    i_set = frozenset(i_set)
    gens = [_normal_power(c, f, f.mult) for f in facets(c)]
    gens += [
        _normal_power(c, f, f.mult - 1)
        for f in facets(c)
        if not i_set <= f.members
    ]
    return IdealGens.make(c.n, gens)


@lru_cache(maxsize=None)
def internal_space(c: Config) -> GradedSubspace:
    """Intersection of the deletion central spaces over every single column.

    Only defined when no column is a coloop (every deletion keeps full rank);
    callers check that before calling.
    """
    space = None
    for x in range(c.ncols):
        piece = central_space(_delete(c, x))
        space = piece if space is None else intersect(space, piece)
    return space


def semi_internal(c: Config, i_set) -> Bundle:
    i_set = frozenset(i_set)
    if not i_set:
        return central(c)
    if not is_independent(c, i_set):
        raise NotIndependent(i_set)
    for b in sorted(i_set):
        if is_coloop(c, b):
            raise ColoopInI(b)

    order = order_with_last(c, i_set)
    bminus = i_internal_bases(c, i_set)

    p_space = None
    for b in sorted(i_set):
        piece = central_space(_delete(c, b))
        p_space = piece if p_space is None else intersect(p_space, piece)

    i_gens = semi_internal_i_gens(c, i_set)
    j_gens = IdealGens.make(
        c.n, [subset_polynomial(c, y) for y in minimal_hitting_sets(bminus)]
    )

    h_val = valuation_histogram(c, bminus, order=order)
    h_alg = hilbert_quotient(i_gens, cap=stabilization_cap(c))
    _check(h_val == h_alg == p_space.hilbert(), "semi-internal: Hilbert functions disagree")
    _check(p_space.dim() == len(bminus), "semi-internal: dimension is not the restricted basis count")
    return Bundle(
        kind="semi_internal",
        config=c,
        p_space=p_space,
        q_basis=None,
        i_ideal=i_gens,
        j_ideal=j_gens,
        hilbert_valuation=h_val,
        hilbert_algebraic=h_alg,
        i_set=i_set,
        b_minus=bminus,
        order=order,
    )


def bundle_for(c: Config, kind: str, fam: SemiExternalFamily | None = None, i_set=None) -> Bundle:
    if kind == "central":
        return central(c)
    if kind == "external":
        return external(c)
    if kind == "semi_external":
        if fam is None:
            raise ConsistencyError("semi_external needs a family")
        return semi_external(c, fam)
    if kind == "semi_internal":
        return semi_internal(c, i_set if i_set is not None else frozenset())
    raise ValueError(f"unknown kind {kind!r}")


def d_space(bundle: Bundle, extra: int = 1) -> GradedSubspace:
    """Kernel of the cover ideal, computed past the primal top degree."""
    return kernel(bundle.j_ideal, bundle.p_space.top_degree() + extra)


def dual_pairing_certificate(bundle: Bundle) -> dict:
    """Gram-matrix invertibility between the primal basis and the kernel basis."""
    if bundle.q_basis is not None:
        p_polys = [q for _, q in bundle.q_basis]
    else:
        p_polys = list(bundle.p_space.basis_polys())
    d_polys = list(d_space(bundle).basis_polys())
    gram = tuple(tuple(pair(p, q) for q in d_polys) for p in p_polys)
    square = len(p_polys) == len(d_polys)
    invertible = square and len(p_polys) > 0 and mat_rank(gram) == len(p_polys)
    if square and not p_polys:
        invertible = True  # both spaces zero: vacuously a perfect pairing
    return {
        "dim_primal": len(p_polys),
        "dim_kernel": len(d_polys),
        "invertible": invertible,
        "passed": square and invertible,
    }


def minimal_completion_sum(c: Config, fam: SemiExternalFamily, require_condition: bool = True) -> GradedSubspace:
    """Sum over minimal family members of the intersections of the central
    spaces of the configurations augmented by each basis completion."""
    holds, witness = normal_power_condition(c, fam)
    if require_condition and not holds:
        raise ConditionFails(witness)
    member_set = set(fam.members)
    minimals = []
    for i_set in fam:
        elems = sorted(i_set)
        proper = False
        for mask in range(1 << len(elems)):
            sub = frozenset(elems[k] for k in range(len(elems)) if mask >> k & 1)
            if sub != i_set and sub in member_set:
                proper = True
                break
        if not proper:
            minimals.append(i_set)
    total = GradedSubspace.zero(c.n)
    for i_set in minimals:
        inter = None
        for b in bases(c):
            if i_set <= b:
                piece = central_space(_augment(c, b - i_set))
                inter = piece if inter is None else intersect(inter, piece)
        total = add(total, inter)
    return total


def internal_extension_check(c: Config, i_set) -> dict:
    """Compare the deletion-intersection space against the all-deletions space
    patched by the extra passive-set products.

    For #i_set <= 2 the equality is a certified statement; for larger sets it
    is exploratory (the report carries the verdict either way).
    """
    i_set = frozenset(i_set)
    if not is_independent(c, i_set):
        raise NotIndependent(i_set)
    for b in sorted(i_set):
        if is_coloop(c, b):
            raise ColoopInI(b)
    report = {
        "i": sorted(i_set),
        "size": len(i_set),
        "mode": "assert" if len(i_set) <= 2 else "explore",
    }
    if any(is_coloop(c, x) for x in range(c.ncols)):
        report["skipped"] = (
            "configuration has a coloop; the all-deletions intersection is undefined"
        )
        return report

    order = order_with_last(c, i_set)
    b_plain = internal_bases(c, order=order)
    b_rel = i_internal_bases(c, i_set)

    if i_set:
        lhs = None
        for b in sorted(i_set):
            piece = central_space(_delete(c, b))
            lhs = piece if lhs is None else intersect(lhs, piece)
    else:
        lhs = central_space(c)

    p_minus = internal_space(c)

    plain_set = set(b_plain)
    extra = [
        subset_polynomial(c, passive_set(c, b, order))
        for b in b_rel
        if b not in plain_set
    ]
    rhs = add(p_minus, GradedSubspace.from_spanning(c.n, extra))

    report.update(
        {
            "equal": lhs == rhs,
            "lhs_hilbert": list(lhs.hilbert()),
            "rhs_hilbert": list(rhs.hilbert()),
            "restricted_bases": len(b_rel),
            "plain_bases": len(b_plain),
        }
    )
    return report


def codimension_counts(c: Config) -> dict:
    """Quotient codimensions of the three power ideals against the matroid
    counts they must reproduce (bases / independents / internal bases)."""
    cap = stabilization_cap(c)
    rows = []
    for label, gens, count in (
        ("central", central_i_gens(c), len(bases(c))),
        ("external", external_i_gens(c), len(independents(c))),
        ("internal", internal_i_gens(c), len(internal_bases(c))),
    ):
        codim = sum(hilbert_quotient(gens, cap=cap))
        rows.append(
            {"kind": label, "codim": codim, "count": count, "equal": codim == count}
        )
    return {"rows": rows, "passed": all(r["equal"] for r in rows)}
