"""Certificate battery: each token runs the machine checks for one statement.

Every check returns a row with a human-readable name, a passed flag and the
evidence (dimensions, Hilbert functions, offsets, witnesses).  A report
passes when all of its rows pass; rows that do not apply to the input are
recorded as skipped and count as passing.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .config import (
    Config,
    SemiExternalFamily,
    bases,
    extend_basis,
    i_internal_bases,
    independents,
    internal_bases,
    is_coloop,
    is_independent,
    normal_power_condition,
    order_with_last,
    passive_set,
    subset_polynomial,
    valuation,
)
from .errors import ConsistencyError, InputError
from .geometry import (
    least_space,
    make_arrangement,
    restriction_certificate,
    vertex_set,
    zonotope_lattice,
)
from .graded import (
    GradedSubspace,
    add,
    direct_sum_certificate,
    hilbert_quotient,
    ideal_contains,
    ideals_equal,
    intersect,
    kernel,
)
from .linalg import matrix, rank
from .zonotopal import (
    _delete,
    central,
    central_space,
    codimension_counts,
    d_space,
    dual_pairing_certificate,
    external,
    external_i_gens,
    full_span_space,
    internal_extension_check,
    internal_space,
    minimal_completion_sum,
    semi_external,
    semi_internal,
    semi_internal_i_gens,
    stabilization_cap,
)

THEOREMS = (
    "th1",
    "exzono",
    "pi",
    "plus",
    "basis",
    "explus",
    "t26",
    "t28",
    "t33",
    "t34",
    "r37",
)

SEARCH_MAX_N = 3
SEARCH_MAX_COLS = 6


def _row(name: str, passed: bool, **evidence) -> dict:
    r = {"check": name, "passed": bool(passed)}
    r.update(evidence)
    return r


def _space_row(name: str, lhs: GradedSubspace, rhs: GradedSubspace, **evidence) -> dict:
    return _row(
        name,
        lhs == rhs,
        lhs_hilbert=list(lhs.hilbert()),
        rhs_hilbert=list(rhs.hilbert()),
        **evidence,
    )


def _offsets_str(arr) -> list:
    return [str(x) for x in arr.offsets]


def _extended_offsets(c: Config):
    lam = list(c.lam) if c.lam is not None else [None] * c.ncols
    lam_b0 = list(c.lam_b0) if c.lam_b0 is not None else [None] * c.n
    return lam + lam_b0


def _dual_row(bundle, points, label: str, arr) -> dict:
    return _space_row(
        label,
        least_space(points),
        d_space(bundle),
        n_points=len(points),
        offsets=_offsets_str(arr),
    )


def _direct_sum_row(bundle, dmax=None) -> dict:
    cert = direct_sum_certificate(bundle.p_space, bundle.j_ideal, dmax)
    return _row(
        "primal space and cover ideal fill every degree exactly once",
        cert["passed"],
        dmax=cert["dmax"],
        degrees=cert["degrees"],
    )


def _gram_row(bundle) -> dict:
    cert = dual_pairing_certificate(bundle)
    return _row(
        "pairing between the primal basis and the kernel basis is invertible",
        cert["passed"],
        dim_primal=cert["dim_primal"],
        dim_kernel=cert["dim_kernel"],
    )


def _triple_hilbert_row(bundle) -> dict:
    agree = (
        bundle.hilbert_valuation
        == bundle.hilbert_algebraic
        == bundle.p_space.hilbert()
    )
    return _row(
        "valuation, quotient and space Hilbert functions agree",
        agree,
        hilbert=list(bundle.hilbert_valuation),
    )


def _kernel_row(bundle) -> dict:
    return _space_row(
        "primal space equals the power-ideal kernel",
        bundle.p_space,
        kernel(bundle.i_ideal, bundle.p_space.top_degree()),
    )


def _verify_th1(c: Config, seed: int) -> list:
    rep = codimension_counts(c)
    return [
        _row(
            f"{r['kind']} power-ideal codimension equals its enumeration count",
            r["equal"],
            codim=r["codim"],
            count=r["count"],
        )
        for r in rep["rows"]
    ]


def _verify_exzono(c: Config, seed: int, dmax=None) -> list:
    b = central(c)
    rows = [
        _row(
            "space dimension equals the basis count",
            b.dim() == len(bases(c)),
            dim=b.dim(),
            count=len(bases(c)),
        ),
        _triple_hilbert_row(b),
        _kernel_row(b),
    ]
    arr = make_arrangement(c, c.lam, seed)
    pts = vertex_set(arr, bases(c))
    rows.append(
        _dual_row(b, pts, "least space of the vertices equals the cover-ideal kernel", arr)
    )
    rows.append(_direct_sum_row(b, dmax))
    return rows


def _verify_pi(c: Config, seed: int) -> list:
    arr = make_arrangement(c, c.lam, seed)
    pts = vertex_set(arr, bases(c))
    ls = least_space(pts)
    rc = restriction_certificate(pts, ls)
    return [
        _row(
            "simple arrangement has one vertex per basis",
            len(pts) == len(bases(c)),
            n_vertices=len(pts),
            n_bases=len(bases(c)),
            offsets=_offsets_str(arr),
        ),
        _row(
            "least space dimension equals the point count",
            ls.dim() == len(pts),
            dim=ls.dim(),
            n_points=len(pts),
        ),
        _row(
            "restriction of the least space to the points is invertible",
            rc["passed"],
            dim_space=rc["dim_space"],
            n_points=rc["n_points"],
        ),
        _space_row(
            "truncation degree does not affect the least space",
            ls,
            least_space(pts, extra=1),
        ),
    ]


def _verify_plus(c: Config, seed: int) -> list:
    gens = external_i_gens(c)
    h = hilbert_quotient(gens, cap=stabilization_cap(c))
    p = full_span_space(c)
    count = len(independents(c))
    rows = [
        _row(
            "power-ideal codimension equals the independent count",
            sum(h) == count,
            codim=sum(h),
            count=count,
        ),
        _row(
            "full span dimension equals the independent count",
            p.dim() == count,
            dim=p.dim(),
            count=count,
        ),
        _space_row(
            "full span equals the power-ideal kernel",
            p,
            kernel(gens, p.top_degree()),
        ),
    ]
    unimodular, pts = zonotope_lattice(c)
    if unimodular:
        rows.append(
            _space_row(
                "least space of the lattice points equals the full span",
                least_space(pts),
                p,
                n_lattice_points=len(pts),
            )
        )
    else:
        rows.append(
            _row(
                "least space of the lattice points equals the full span",
                True,
                skipped="configuration is not unimodular",
            )
        )
    return rows


def _verify_basis(c: Config, seed: int) -> list:
    b = central(c)
    degrees_ok = all(q.degree == valuation(c, cols) for cols, q in b.q_basis)
    rng = random.Random(seed)
    perm = list(range(c.ncols))
    rng.shuffle(perm)
    permuted = Config(tuple(c.columns[j] for j in perm))
    return [
        _row(
            "one generator per basis",
            len(b.q_basis) == len(bases(c)),
            n_generators=len(b.q_basis),
            n_bases=len(bases(c)),
        ),
        _space_row(
            "generators span the primal space",
            GradedSubspace.from_spanning(c.n, [q for _, q in b.q_basis]),
            b.p_space,
        ),
        _row("generator degree equals the basis valuation", degrees_ok),
        _triple_hilbert_row(b),
        _space_row(
            "primal space is invariant under column reordering",
            central(permuted).p_space,
            b.p_space,
            permutation=perm,
        ),
    ]


def _verify_explus(c: Config, seed: int, dmax=None) -> list:
    b = external(c)
    rows = [
        _row(
            "space dimension equals the independent count",
            b.dim() == len(independents(c)),
            dim=b.dim(),
            count=len(independents(c)),
        ),
        _triple_hilbert_row(b),
        _kernel_row(b),
        _direct_sum_row(b, dmax),
    ]
    arr = make_arrangement(c.extended(), _extended_offsets(c), seed)
    ext_bases = [extend_basis(c, s) for s in independents(c)]
    pts = vertex_set(arr, ext_bases)
    rows.append(
        _dual_row(
            b, pts, "least space of the extended vertices equals the cover-ideal kernel", arr
        )
    )
    rng = random.Random(seed)
    perm = list(range(c.ncols))
    rng.shuffle(perm)
    permuted = Config(tuple(c.columns[j] for j in perm), b0=c.b0)
    rows.append(
        _space_row(
            "primal space is invariant under column reordering",
            external(permuted).p_space,
            b.p_space,
            permutation=perm,
        )
    )
    return rows


def _verify_t26(c: Config, fam: SemiExternalFamily, seed: int, dmax=None) -> list:
    b = semi_external(c, fam)
    fam = b.family
    rows = [
        _row(
            "space dimension equals the family size",
            b.dim() == len(fam),
            dim=b.dim(),
            count=len(fam),
        ),
        _triple_hilbert_row(b),
        _kernel_row(b),
    ]
    arr = make_arrangement(c.extended(), _extended_offsets(c), seed)
    pts = vertex_set(arr, [extend_basis(c, s) for s in fam])
    rows.append(
        _dual_row(
            b, pts, "least space of the family vertices equals the cover-ideal kernel", arr
        )
    )
    rows.append(_direct_sum_row(b, dmax))
    rows.append(_gram_row(b))
    return rows


def _verify_t28(c: Config, fam: SemiExternalFamily, seed: int) -> list:
    b = semi_external(c, fam)
    fam = b.family
    holds, witness = normal_power_condition(c, fam)
    rows = [
        _row(
            "normal-power condition status (hypothesis, reported not asserted)",
            True,
            holds=holds,
            witness=None if witness is None else sorted(witness),
        )
    ]
    cap = stabilization_cap(c)
    dmax = max(
        len(hilbert_quotient(b.i_ideal, cap=cap)),
        len(hilbert_quotient(b.ieps_ideal, cap=cap)),
    )
    if holds:
        rows.append(
            _row(
                "power ideal equals the pure-power ideal degreewise",
                ideals_equal(b.i_ideal, b.ieps_ideal, dmax),
                dmax=dmax,
            )
        )
        rows.append(
            _space_row(
                "minimal-member completion sum equals the primal space",
                minimal_completion_sum(c, fam),
                b.p_space,
            )
        )
    else:
        rows.append(
            _row(
                "pure-power ideal is contained in the power ideal degreewise",
                ideal_contains(b.i_ideal, b.ieps_ideal, dmax),
                dmax=dmax,
            )
        )
    return rows


def _verify_t33(c: Config, i_set, seed: int) -> list:
    b = semi_internal(c, i_set)
    count = len(b.b_minus) if b.b_minus is not None else len(bases(c))
    return [
        _row(
            "space dimension equals the restricted basis count",
            b.dim() == count,
            dim=b.dim(),
            count=count,
        ),
        _triple_hilbert_row(b),
        _kernel_row(b),
    ]


def _verify_t34(c: Config, i_set, seed: int, dmax=None) -> list:
    b = semi_internal(c, i_set)
    fam_bases = b.b_minus if b.b_minus is not None else bases(c)
    arr = make_arrangement(c, c.lam, seed)
    pts = vertex_set(arr, fam_bases)
    return [
        _dual_row(
            b, pts, "least space of the restricted vertices equals the cover-ideal kernel", arr
        ),
        _direct_sum_row(b, dmax),
        _gram_row(b),
    ]


def _verify_r37(c: Config, i_set, seed: int) -> list:
    rep = internal_extension_check(c, i_set)
    if "skipped" in rep:
        passed = True
    elif rep["mode"] == "assert":
        passed = rep["equal"]
    else:
        passed = True
    return [
        _row(
            "deletion-intersection space matches the patched all-deletions space",
            passed,
            **rep,
        )
    ]


def run_theorem(
    token: str,
    c: Config,
    fam: SemiExternalFamily | None = None,
    i_set=None,
    seed: int = 0,
    dmax=None,
) -> dict:
    if token not in THEOREMS:
        raise InputError(
            f"unknown theorem {token!r}; expected one of {', '.join(THEOREMS)}"
        )
    if token in ("t26", "t28") and fam is None:
        raise InputError(f"theorem {token} needs the iprime family in the input")
    if token in ("t33", "t34", "r37") and i_set is None:
        raise InputError(f"theorem {token} needs the index list i in the input")

    if token == "th1":
        checks = _verify_th1(c, seed)
    elif token == "exzono":
        checks = _verify_exzono(c, seed, dmax)
    elif token == "pi":
        checks = _verify_pi(c, seed)
    elif token == "plus":
        checks = _verify_plus(c, seed)
    elif token == "basis":
        checks = _verify_basis(c, seed)
    elif token == "explus":
        checks = _verify_explus(c, seed, dmax)
    elif token == "t26":
        checks = _verify_t26(c, fam, seed, dmax)
    elif token == "t28":
        checks = _verify_t28(c, fam, seed)
    elif token == "t33":
        checks = _verify_t33(c, frozenset(i_set), seed)
    elif token == "t34":
        checks = _verify_t34(c, frozenset(i_set), seed, dmax)
    else:
        checks = _verify_r37(c, frozenset(i_set), seed)
    return {
        "theorem": token,
        "checks": checks,
        "passed": all(r["passed"] for r in checks),
    }


def _r37_spaces(c: Config, i_set):
    """Both sides of the patched-extension identity, computed from scratch."""
    lhs = None
    for b in sorted(i_set):
        piece = central_space(_delete(c, b))
        lhs = piece if lhs is None else intersect(lhs, piece)
    if lhs is None:
        lhs = central_space(c)

    order = order_with_last(c, i_set)
    plain = set(internal_bases(c, order=order))
    extra = [
        subset_polynomial(c, passive_set(c, b, order))
        for b in i_internal_bases(c, i_set)
        if b not in plain
    ]
    rhs = add(internal_space(c), GradedSubspace.from_spanning(c.n, extra))
    return lhs, rhs


def _confirm_violation(c: Config, i_set) -> tuple:
    """Re-derive the left side through the power-ideal kernel before trusting
    a reported inequality; the two primal routes must agree with each other."""
    lhs, rhs = _r37_spaces(c, i_set)
    gens = semi_internal_i_gens(c, i_set)
    h = hilbert_quotient(gens, cap=stabilization_cap(c))
    dmax = max(lhs.top_degree(), rhs.top_degree(), len(h))
    k = kernel(gens, dmax)
    if k != lhs:
        raise ConsistencyError(
            "deletion-intersection space and power-ideal kernel disagree: "
            f"columns {[list(map(str, v)) for v in c.columns]}, i={sorted(i_set)}"
        )
    return k != rhs, lhs, rhs


def search_internal_extension(max_n: int, max_cols: int) -> dict:
    """Enumerate small 0/1 configurations and independent triples, looking for
    a failure of the patched-extension equality.  Finding nothing asserts
    nothing; any hit is re-verified through an independent route first."""
    if max_n > SEARCH_MAX_N or max_cols > SEARCH_MAX_COLS:
        raise InputError(
            f"search bounds capped at n<={SEARCH_MAX_N}, columns<={SEARCH_MAX_COLS}; "
            f"got n<={max_n}, columns<={max_cols}"
        )
    report = {
        "bounds": {"max_n": max_n, "max_cols": max_cols},
        "configs_examined": 0,
        "configs_skipped_rank": 0,
        "configs_skipped_coloop": 0,
        "triples_checked": 0,
        "violations": [],
        "note": "an empty violation list asserts nothing beyond the searched bounds",
    }
    for n in range(3, max_n + 1):
        pool = [v for v in itertools.product((0, 1), repeat=n) if any(v)]
        for ncols in range(n, max_cols + 1):
            for cols in itertools.combinations_with_replacement(pool, ncols):
                if rank(matrix(cols)) < n:
                    report["configs_skipped_rank"] += 1
                    continue
                c = Config(tuple(tuple(Fraction(x) for x in v) for v in cols))
                if any(is_coloop(c, j) for j in range(ncols)):
                    report["configs_skipped_coloop"] += 1
                    continue
                report["configs_examined"] += 1
                for tri in itertools.combinations(range(ncols), 3):
                    i_set = frozenset(tri)
                    if not is_independent(c, i_set):
                        continue
                    report["triples_checked"] += 1
                    rep = internal_extension_check(c, i_set)
                    if rep["equal"]:
                        continue
                    confirmed, lhs, rhs = _confirm_violation(c, i_set)
                    if confirmed:
                        report["violations"].append(
                            {
                                "matrix": [
                                    [int(c.columns[j][i]) for j in range(ncols)]
                                    for i in range(n)
                                ],
                                "i": sorted(i_set),
                                "lhs_hilbert": list(lhs.hilbert()),
                                "rhs_hilbert": list(rhs.hilbert()),
                                "reverified": True,
                            }
                        )
    return report
