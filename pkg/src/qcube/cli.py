"""Command-line front end: ``qcube analyze|construct|search|bitrade|campaign``.

Exit codes: 0 success, 2 input error, 3 resource cap, 4 internal invariant
violation (the offending set is dumped to a triage file).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from fractions import Fraction

from .analysis import bf_bound, theorem_eval
from .constructions import hamming_code, mds_sum_code, random_subset, slab, subcube_bitrade, translate
from .cube import CubeShape, VertexSet, format_qset, read_qset, write_qset
from .errors import CapExceeded, InvariantViolation, QCubeError
from .search import (
    SearchConfig,
    admissible_matrices,
    canonical_form,
    min_bitrade,
    search_perfect_colorings,
    verify_bounds_campaign,
)
from .spectral import full_spectrum, weight_profile
from .structures import bitrade_order, oa_check

SCHEMA_VERSION = "1.0"


class InputError(QCubeError):
    pass


def _frac(x: Fraction) -> str:
    return str(Fraction(x))


# ---------------------------------------------------------------------------
# construction specs: "name:key=value,key=value"

_CONSTRUCTIONS = {
    "hamming": (lambda a: hamming_code(a["q"], a["m"]), ("q", "m"), {}),
    "mds": (lambda a: mds_sum_code(a["q"], a["n"], a["a"]), ("q", "n"), {"a": 0}),
    "slab": (lambda a: slab(a["q"], a["n"], a["i"], a["v"]), ("q", "n"), {"i": 0, "v": 0}),
    "subcube_bitrade": (lambda a: subcube_bitrade(a["q"], a["n"], a["t"]), ("q", "n", "t"), {}),
    "random": (lambda a: random_subset(CubeShape(a["q"], a["n"]), a["k"], a["seed"]), ("q", "n", "k"), {"seed": 0}),
}


def parse_construction(spec: str) -> tuple[VertexSet, dict]:
    name, _, body = spec.partition(":")
    if name not in _CONSTRUCTIONS:
        raise InputError(f"unknown construction {name!r}; choose from {', '.join(sorted(_CONSTRUCTIONS))}")
    build, required, defaults = _CONSTRUCTIONS[name]
    args = dict(defaults)
    for item in filter(None, body.split(",")):
        key, eq, value = item.partition("=")
        if not eq:
            raise InputError(f"bad construction argument {item!r}")
        try:
            args[key.strip()] = int(value)
        except ValueError:
            raise InputError(f"construction argument {key}={value!r} is not an integer") from None
    missing = [k for k in required if k not in args]
    if missing:
        raise InputError(f"construction {name!r} needs {', '.join(missing)}")
    unknown = set(args) - set(required) - set(defaults)
    if unknown:
        raise InputError(f"unknown argument(s) {sorted(unknown)} for {name!r}")
    return build(args), {"kind": "construction", "spec": spec, "seed": args.get("seed")}


def parse_vector(text: str, n: int) -> list[int]:
    parts = text.split(",") if "," in text else list(text)
    try:
        v = [int(p) for p in parts]
    except ValueError:
        raise InputError(f"bad vector {text!r}") from None
    if len(v) != n:
        raise InputError(f"vector {text!r} has {len(v)} entries, expected {n}")
    return v


def load_input(args) -> tuple[VertexSet, dict]:
    if args.construct and args.input:
        raise InputError("give either a set file or --construct, not both")
    if args.construct:
        S, desc = parse_construction(args.construct)
    elif args.input:
        S = read_qset(args.input)
        desc = {"kind": "file", "path": os.path.basename(args.input)}
    else:
        raise InputError("no input: give a .qset file or --construct")
    if getattr(args, "translate", None):
        v = parse_vector(args.translate, S.shape.n)
        S = translate(S, v)
        desc["translate"] = v
    return S, desc


# ---------------------------------------------------------------------------
# reports

def analysis_report(S: VertexSet) -> dict:
    """Everything except input descriptor and timing, JSON-ready."""
    spectrum = full_spectrum(S)
    rep = theorem_eval(S, spectrum)
    bf = bf_bound(S, rep.cor)
    profile = weight_profile(S, spectrum)
    oa = oa_check(S)
    matrix = None
    if rep.matrix is not None:
        m = rep.matrix
        matrix = {"b": m.b, "c": m.c, "s": m.s, "rows": [list(r) for r in m.rows]}
    return {
        "schema_version": SCHEMA_VERSION,
        "shape": {"q": S.shape.q, "n": S.shape.n},
        "cardinality": S.cardinality,
        "rho": _frac(rep.rho),
        "nei": _frac(rep.nei),
        "alpha": _frac(rep.alpha),
        "cor": rep.cor,
        "floats": {"rho": float(rep.rho), "nei": float(rep.nei), "alpha": float(rep.alpha)},
        "theorem": {
            "lhs": _frac(rep.theorem_lhs),
            "rhs": _frac(rep.theorem_rhs),
            "slack": _frac(rep.slack),
            "lhs_float": float(rep.theorem_lhs),
            "rhs_float": float(rep.theorem_rhs),
            "verdict": "equality" if rep.is_perfect else "strict",
        },
        "is_perfect": rep.is_perfect,
        "verdict": "perfect 2-coloring" if rep.is_perfect else "not perfect",
        "matrix": matrix,
        "bierbrauer_friedman": {
            "lhs": _frac(bf.lhs),
            "rhs": _frac(bf.rhs),
            "lhs_float": float(bf.lhs),
            "rhs_float": float(bf.rhs),
            "holds": bf.holds,
            "verdict": "equality" if bf.equality else ("holds" if bf.holds else "VIOLATED"),
        },
        "weight_profile": [
            {"weight": w, "nonzero": k, "energy": e}
            for w, (k, e) in enumerate(zip(profile.nonzero_count, profile.energy))
        ],
        "orthogonal_array": {
            "strength": oa.strength,
            "lambda": oa.index_lambda,
            "paper_lambda": _frac(oa.paper_lambda),
        },
        "bitrade_order": bitrade_order(S),
    }


def _summary(report: dict) -> str:
    th, bf = report["theorem"], report["bierbrauer_friedman"]
    lines = [
        f"cube q={report['shape']['q']} n={report['shape']['n']}, |S|={report['cardinality']}",
        f"rho={report['rho']}  nei={report['nei']}  alpha={report['alpha']}  cor={report['cor']}",
        f"rho*q*(cor+1) = {th['lhs']}  <=  alpha = {th['rhs']}  ({th['verdict']})",
        f"verdict: {report['verdict']}",
    ]
    if report["matrix"]:
        m = report["matrix"]
        lines.append(f"matrix: {m['rows']}  (b={m['b']}, c={m['c']}, s={m['s']})")
    lines.append(f"Bierbrauer-Friedman: {bf['lhs']} <= rho = {bf['rhs']} ({bf['verdict']})")
    support = [p["weight"] for p in report["weight_profile"] if p["nonzero"]]
    lines.append(f"spectrum support weights: {support}")
    oa = report["orthogonal_array"]
    lines.append(f"orthogonal array: strength {oa['strength']}, lambda {oa['lambda']}")
    lines.append(f"bitrade order: {report['bitrade_order']}")
    return "\n".join(lines)


def _write_json(path: str | None, payload) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")


# ---------------------------------------------------------------------------
# subcommands

def cmd_analyze(args) -> int:
    S, desc = load_input(args)
    start = time.perf_counter()
    try:
        report = analysis_report(S)
    except InvariantViolation:
        fd, path = tempfile.mkstemp(prefix="qcube-triage-", suffix=".qset")
        with os.fdopen(fd, "w") as fh:
            fh.write(format_qset(S))
        print(f"offending input written to {path}", file=sys.stderr)
        raise
    report["input"] = desc
    report["timing"] = {"seconds": time.perf_counter() - start}
    print(_summary(report))
    _write_json(args.json, report)
    return 0


def cmd_construct(args) -> int:
    S, desc = load_input(args)
    write_qset(S, args.output, comments=[json.dumps(desc, sort_keys=True)])
    print(f"wrote {S.cardinality} tuples (q={S.shape.q}, n={S.shape.n}) to {args.output}")
    _write_json(args.json, {"schema_version": SCHEMA_VERSION, "input": desc,
                            "shape": {"q": S.shape.q, "n": S.shape.n},
                            "cardinality": S.cardinality, "output": args.output})
    return 0


def cmd_search(args) -> int:
    shape = CubeShape(args.q, args.n)
    if args.matrices:
        pairs = admissible_matrices(shape)
        for b, c in pairs:
            print(f"b={b} c={c}")
        print(f"{len(pairs)} admissible matrices (necessary conditions only)")
        _write_json(args.json, {"schema_version": SCHEMA_VERSION, "shape": {"q": args.q, "n": args.n},
                                "admissible": [list(p) for p in pairs]})
        return 0
    if args.b is None or args.c is None:
        raise InputError("search needs --b and --c (or --matrices)")
    config = SearchConfig(shape, args.b, args.c, args.limit, args.symmetry_reduction)
    result = search_perfect_colorings(config)
    print(f"{result.count} solutions")
    if result.reason:
        print(f"reason: {result.reason}")
    payload = {"schema_version": SCHEMA_VERSION, "shape": {"q": args.q, "n": args.n},
               "b": args.b, "c": args.c, "count": result.count, "reason": result.reason,
               "files": []}
    if args.canonical and result.solutions:
        classes = {canonical_form(S) for S in result.solutions}
        print(f"{len(classes)} classes up to coordinate permutation and translation among emitted solutions")
        payload["canonical_classes"] = len(classes)
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        for k, S in enumerate(result.solutions):
            path = os.path.join(args.out_dir, f"solution_{k:05d}.qset")
            write_qset(S, path, comments=[f"perfect coloring b={args.b} c={args.c}"])
            payload["files"].append(path)
    _write_json(args.json, payload)
    return 0


def cmd_bitrade(args) -> int:
    shape = CubeShape(args.q, args.n)
    if not 0 <= args.t <= args.n - 1:
        raise InputError(f"t must be in [0, {args.n - 1}]")
    res = min_bitrade(shape, args.t, method=args.method)
    bound = 2 ** (args.t + 1)
    print(f"minimum {res.minimum_size}")
    print(f"claimed lower bound 2^(t+1) = {bound}; kernel dimension {res.kernel_dimension}; method {res.method}")
    if args.output:
        write_qset(res.witness, args.output, comments=[f"minimum bitrade of order {args.t}"])
    _write_json(args.json, {"schema_version": SCHEMA_VERSION, "shape": {"q": args.q, "n": args.n},
                            "t": args.t, "minimum": res.minimum_size, "claimed_bound": bound,
                            "kernel_dimension": res.kernel_dimension, "method": res.method,
                            "witness": [list(p) for p in res.witness.points()]})
    return 0


def cmd_campaign(args) -> int:
    shapes = []
    for text in args.shape:
        try:
            q, n = (int(x) for x in text.split(","))
        except ValueError:
            raise InputError(f"bad shape {text!r}; expected q,n") from None
        shapes.append((q, n))
    report = verify_bounds_campaign(shapes)
    report["schema_version"] = SCHEMA_VERSION
    for item in report["shapes"]:
        print(f"q={item['q']} n={item['n']}:")
        for m in item["matrices"]:
            extra = f", oracle {m['oracle_count']}" if "oracle_count" in m else ""
            print(f"  (b,c)=({m['b']},{m['c']}): {m['count']} colorings{extra}, "
                  f"theorem equality {m['theorem_equality_all']}, "
                  f"min component {m['min_component']} >= {m['component_bound']}: {m['component_bound_ok']}")
        for bt in item["bitrades"]:
            if "error" in bt:
                print(f"  t={bt['t']}: {bt['error']}")
            else:
                print(f"  t={bt['t']}: minimum bitrade {bt['minimum']} (claimed bound {bt['claimed_bound']})")
        for err in item["errors"]:
            print(f"  error: {err}")
    _write_json(args.json, report)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qcube", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add_input(sp):
        sp.add_argument("input", nargs="?", help=".qset file")
        sp.add_argument("--construct", metavar="SPEC", help="e.g. hamming:q=2,m=3")
        sp.add_argument("--translate", metavar="VECTOR", help="translate the set by this vector")

    a = sub.add_parser("analyze", help="run every analysis on one set")
    add_input(a)
    a.add_argument("--json", metavar="PATH")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("construct", help="write a reference set to a .qset file")
    add_input(c)
    c.add_argument("-o", "--output", required=True)
    c.add_argument("--json", metavar="PATH")
    c.set_defaults(func=cmd_construct)

    s = sub.add_parser("search", help="enumerate perfect 2-colorings")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--b", type=int)
    s.add_argument("--c", type=int)
    s.add_argument("--limit", type=int, default=0, help="solutions to keep/write (0 = count only)")
    s.add_argument("--out-dir")
    s.add_argument("--matrices", action="store_true", help="list admissible (b, c) instead")
    s.add_argument("--symmetry-reduction", action="store_true")
    s.add_argument("--canonical", action="store_true", help="count isomorphism classes of kept solutions")
    s.add_argument("--json", metavar="PATH")
    s.set_defaults(func=cmd_search)

    b = sub.add_parser("bitrade", help="exact minimum bitrade size")
    b.add_argument("--q", type=int, required=True)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--t", type=int, required=True)
    b.add_argument("--method", choices=("auto", "kernel", "bnb"), default="auto")
    b.add_argument("-o", "--output", help="write the witness here")
    b.add_argument("--json", metavar="PATH")
    b.set_defaults(func=cmd_bitrade)

    g = sub.add_parser("campaign", help="search and bound checks over several shapes")
    g.add_argument("--shape", action="append", default=[], metavar="Q,N")
    g.add_argument("--json", metavar="PATH")
    g.set_defaults(func=cmd_campaign)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 4
    except (QCubeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
