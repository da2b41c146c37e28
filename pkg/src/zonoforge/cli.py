"""Command-line front end.

Commands read one JSON input document describing the configuration and
write one JSON report; reports are deterministic byte-for-byte for
identical inputs (including the seed).  With --output the JSON goes to the
file and a short human summary goes to stdout; without it the JSON itself
is the stdout output.

Exit codes: 0 all certificates passed, 1 a certificate failed (or an
internal consistency check tripped), 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .config import (
    Config,
    SemiExternalFamily,
    bases,
    ensure_family,
    facets,
    i_internal_bases,
    independents,
    internal_bases,
    make_config,
    semiexternal_close,
    valuation_histogram,
)
from .errors import InputError, ZonoforgeError
from .graded import kernel
from .verify import run_theorem, search_internal_extension
from .zonotopal import bundle_for

DOC_FIELDS = ("matrix", "b0", "lambda", "lambda_b0", "iprime", "iprime_closed", "i", "seed")


def _rat(value, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise InputError(
            f"field {where}: expected an integer or a 'p/q' string, got {value!r}"
        )
    if isinstance(value, int):
        return Fraction(value)
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"field {where}: bad rational {value!r} ({exc})") from exc


def _rat_matrix(rows, where: str):
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InputError(f"field {where}: expected a non-empty list of rows")
    width = len(rows[0])
    out = []
    for i, row in enumerate(rows):
        if len(row) != width:
            raise InputError(f"field {where}[{i}]: ragged row (expected {width} entries)")
        out.append([_rat(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)])
    return out


def _rat_list(values, where: str, allow_none: bool):
    if not isinstance(values, list):
        raise InputError(f"field {where}: expected a list")
    out = []
    for j, x in enumerate(values):
        if x is None and allow_none:
            out.append(None)
        else:
            out.append(_rat(x, f"{where}[{j}]"))
    return out


def _index_list(values, where: str, ncols: int) -> list:
    if not isinstance(values, list):
        raise InputError(f"field {where}: expected a list of column indices")
    out = []
    for j, x in enumerate(values):
        if isinstance(x, bool) or not isinstance(x, int):
            raise InputError(f"field {where}[{j}]: expected an integer index, got {x!r}")
        if not 0 <= x < ncols:
            raise InputError(
                f"field {where}[{j}]: column index {x} out of range (configuration has {ncols})"
            )
        out.append(x)
    return out


def parse_document(raw: dict):
    """Parse and validate a configuration document.

    Returns (config, meta) where meta carries iprime seeds/closed flag, the
    i index list and the seed.
    """
    if not isinstance(raw, dict):
        raise InputError("input document must be a JSON object")
    unknown = sorted(set(raw) - set(DOC_FIELDS))
    if unknown:
        raise InputError(f"unknown document fields: {', '.join(unknown)}")
    if "matrix" not in raw:
        raise InputError("field matrix: required")
    mat = _rat_matrix(raw["matrix"], "matrix")
    b0 = _rat_matrix(raw["b0"], "b0") if raw.get("b0") is not None else None
    lam = (
        _rat_list(raw["lambda"], "lambda", allow_none=True)
        if raw.get("lambda") is not None
        else None
    )
    lam_b0 = (
        _rat_list(raw["lambda_b0"], "lambda_b0", allow_none=True)
        if raw.get("lambda_b0") is not None
        else None
    )
    c = make_config(mat, b0_rows=b0, lam=lam, lam_b0=lam_b0)

    closed = raw.get("iprime_closed", False)
    if not isinstance(closed, bool):
        raise InputError(f"field iprime_closed: expected a boolean, got {closed!r}")
    meta = {"iprime": None, "iprime_closed": closed, "i": None}
    if raw.get("iprime") is not None:
        if not isinstance(raw["iprime"], list):
            raise InputError("field iprime: expected a list of index lists")
        meta["iprime"] = [
            frozenset(_index_list(m, f"iprime[{k}]", c.ncols))
            for k, m in enumerate(raw["iprime"])
        ]
    if raw.get("i") is not None:
        meta["i"] = _index_list(raw["i"], "i", c.ncols)
    seed = raw.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise InputError(f"field seed: expected an integer, got {seed!r}")
    meta["seed"] = seed
    return c, meta


def _family(c: Config, meta) -> SemiExternalFamily | None:
    if meta["iprime"] is None:
        return None
    if meta["iprime_closed"]:
        return ensure_family(c, SemiExternalFamily(tuple(meta["iprime"])))
    return semiexternal_close(c, meta["iprime"])


def _echo(c: Config, meta) -> dict:
    return {
        "matrix": [[str(x) for x in row] for row in zip(*c.columns)],
        "b0": None if c.b0 is None else [[str(x) for x in row] for row in zip(*c.b0)],
        "lambda": None if c.lam is None else [None if x is None else str(x) for x in c.lam],
        "lambda_b0": None
        if c.lam_b0 is None
        else [None if x is None else str(x) for x in c.lam_b0],
        "iprime": None
        if meta["iprime"] is None
        else [sorted(m) for m in meta["iprime"]],
        "iprime_closed": meta["iprime_closed"],
        "i": meta["i"],
        "seed": meta["seed"],
    }


def _render_polys(polys) -> list:
    return [p.render() for p in polys]


def cmd_matroid(c: Config, meta) -> dict:
    result = {
        "n": c.n,
        "n_columns": c.ncols,
        "bases": [sorted(b) for b in bases(c)],
        "independents": [sorted(s) for s in independents(c)],
        "facets": [
            {
                "normal": [str(x) for x in f.normal],
                "members": sorted(f.members),
                "multiplicity": f.mult,
            }
            for f in facets(c)
        ],
        "valuation_histogram": {
            "bases": list(valuation_histogram(c, bases(c))),
            "independents": list(valuation_histogram(c, independents(c))),
        },
        "internal_bases": [sorted(b) for b in internal_bases(c)],
    }
    if meta["i"] is not None:
        result["i_internal_bases"] = [
            sorted(b) for b in i_internal_bases(c, frozenset(meta["i"]))
        ]
    else:
        result["i_internal_bases"] = None
    return result


def cmd_space(c: Config, meta, kind: str, dmax=None) -> dict:
    if kind == "semi_external" and meta["iprime"] is None:
        raise InputError("kind semi_external needs the iprime field in the input")
    if kind == "semi_internal" and meta["i"] is None:
        raise InputError("kind semi_internal needs the index list i in the input")
    bundle = bundle_for(
        c,
        kind,
        fam=_family(c, meta) if kind == "semi_external" else None,
        i_set=frozenset(meta["i"]) if kind == "semi_internal" else None,
    )
    result = {
        "kind": bundle.kind,
        "dim": bundle.dim(),
        "hilbert": {
            "valuation": list(bundle.hilbert_valuation),
            "quotient": list(bundle.hilbert_algebraic),
            "space": list(bundle.p_space.hilbert()),
        },
        "q_basis": None
        if bundle.q_basis is None
        else [
            {"columns": sorted(cols), "poly": q.render()}
            for cols, q in bundle.q_basis
        ],
        "i_ideal": _render_polys(bundle.i_ideal.gens),
        "ieps_ideal": None
        if bundle.ieps_ideal is None
        else _render_polys(bundle.ieps_ideal.gens),
        "j_ideal": _render_polys(bundle.j_ideal.gens),
        "family": None
        if bundle.family is None
        else [sorted(m) for m in bundle.family],
        "i": None if bundle.i_set is None else sorted(bundle.i_set),
        "restricted_bases": None
        if bundle.b_minus is None
        else [sorted(b) for b in bundle.b_minus],
        "order": None if bundle.order is None else list(bundle.order),
    }
    if dmax is not None:
        result["d_space"] = {
            "dmax": dmax,
            "basis": _render_polys(kernel(bundle.j_ideal, dmax).basis_polys()),
        }
    else:
        result["d_space"] = None
    return result


def cmd_verify(c: Config, meta, theorem: str, seed: int, dmax=None) -> dict:
    fam = _family(c, meta) if theorem in ("t26", "t28") else None
    return run_theorem(
        theorem,
        c,
        fam=fam,
        i_set=None if meta["i"] is None else frozenset(meta["i"]),
        seed=seed,
        dmax=dmax,
    )


def _human_matroid(result) -> str:
    lines = [
        f"configuration: n={result['n']}, columns={result['n_columns']}",
        f"bases: {len(result['bases'])}",
        f"independents: {len(result['independents'])}",
        f"internal bases: {len(result['internal_bases'])}",
        "facets (normal : members : multiplicity):",
    ]
    for f in result["facets"]:
        normal = "(" + ", ".join(f["normal"]) + ")"
        lines.append(f"  {normal} : {f['members']} : {f['multiplicity']}")
    lines.append(f"valuation histogram over bases: {result['valuation_histogram']['bases']}")
    lines.append(
        f"valuation histogram over independents: {result['valuation_histogram']['independents']}"
    )
    if result["i_internal_bases"] is not None:
        lines.append(f"bases internal relative to i: {result['i_internal_bases']}")
    return "\n".join(lines)


def _human_space(result) -> str:
    lines = [
        f"kind: {result['kind']}",
        f"dimension: {result['dim']}",
        f"hilbert (valuation): {result['hilbert']['valuation']}",
        f"hilbert (quotient):  {result['hilbert']['quotient']}",
        f"hilbert (space):     {result['hilbert']['space']}",
        f"power ideal generators: {len(result['i_ideal'])}",
        f"cover ideal generators: {len(result['j_ideal'])}",
    ]
    if result["q_basis"] is not None:
        lines.append("generator polynomials:")
        for entry in result["q_basis"]:
            lines.append(f"  {entry['columns']}: {entry['poly']}")
    if result["restricted_bases"] is not None:
        lines.append(f"restricted bases: {result['restricted_bases']}")
    return "\n".join(lines)


def _human_verify(result) -> str:
    lines = [f"theorem {result['theorem']}: {'PASS' if result['passed'] else 'FAIL'}"]
    for row in result["checks"]:
        mark = "pass" if row["passed"] else "FAIL"
        note = ""
        if "skipped" in row:
            note = f" (skipped: {row['skipped']})"
        elif "holds" in row:
            note = f" (holds: {row['holds']}, witness: {row['witness']})"
        lines.append(f"  [{mark}] {row['check']}{note}")
    return "\n".join(lines)


def _human_search(result) -> str:
    return "\n".join(
        [
            f"bounds: n<={result['bounds']['max_n']}, columns<={result['bounds']['max_cols']}",
            f"configurations examined: {result['configs_examined']}"
            f" (skipped {result['configs_skipped_rank']} rank-deficient,"
            f" {result['configs_skipped_coloop']} with coloops)",
            f"independent triples checked: {result['triples_checked']}",
            f"violations found: {len(result['violations'])}",
        ]
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zonoforge",
        description="Exact certificates for hierarchical spaces of a rational vector configuration.",
    )
    parser.add_argument("--version", action="version", version=f"zonoforge {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, input_required=True):
        p.add_argument("--input", required=input_required, help="JSON configuration document")
        p.add_argument("--output", help="write the JSON report here (human summary to stdout)")
        p.add_argument("--seed", type=int, default=None, help="override the document's seed")

    p_mat = sub.add_parser("matroid", help="bases, independents, facets, histograms")
    common(p_mat)

    p_space = sub.add_parser("space", help="construct one space bundle")
    common(p_space)
    p_space.add_argument(
        "--kind",
        required=True,
        choices=("central", "external", "semi_external", "semi_internal"),
    )
    p_space.add_argument(
        "--dmax", type=int, default=None, help="also render the cover-ideal kernel up to this degree"
    )

    p_ver = sub.add_parser("verify", help="run one theorem's certificate battery")
    common(p_ver)
    p_ver.add_argument("--theorem", required=True, help="th1|exzono|pi|plus|basis|explus|t26|t28|t33|t34|r37")
    p_ver.add_argument(
        "--dmax", type=int, default=None, help="override the direct-sum certificate depth"
    )

    p_search = sub.add_parser(
        "search-r37", help="search small configurations for a patched-extension violation"
    )
    common(p_search, input_required=False)
    p_search.add_argument("--max-n", type=int, default=2, help="largest ambient dimension (cap 3)")
    p_search.add_argument("--max-cols", type=int, default=4, help="largest column count (cap 6)")

    return parser


def _load(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read input file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"input is not valid JSON: {exc}") from exc


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "search-r37":
            echo = {}
            if args.input:
                c, meta = parse_document(_load(args.input))
                echo = _echo(c, meta)
            result = search_internal_extension(args.max_n, args.max_cols)
            report = {
                "command": "search-r37",
                "version": __version__,
                "input": echo,
                "result": result,
                "passed": True,
            }
            human = _human_search(result)
        else:
            c, meta = parse_document(_load(args.input))
            seed = args.seed if args.seed is not None else meta["seed"]
            meta = dict(meta, seed=seed)
            if args.command == "matroid":
                result = cmd_matroid(c, meta)
                passed = True
                human = _human_matroid(result)
            elif args.command == "space":
                result = cmd_space(c, meta, args.kind, args.dmax)
                passed = True
                human = _human_space(result)
            else:
                result = cmd_verify(c, meta, args.theorem, seed, args.dmax)
                passed = result["passed"]
                human = _human_verify(result)
            report = {
                "command": args.command,
                "version": __version__,
                "input": _echo(c, meta),
                "result": result,
                "passed": passed,
            }
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except ZonoforgeError as exc:
        print(f"certificate failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1

    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"input error: cannot write output file: {exc}", file=sys.stderr)
            return 2
        print(human)
    else:
        sys.stdout.write(text)
    return 0 if report["passed"] else 1
