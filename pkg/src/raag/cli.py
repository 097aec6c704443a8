"""Command-line front end.

Exit status: 0 success, 1 property or theorem violation, 2 usage or parse
error, 3 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .graph import GraphFormatError, parse_graph
from .normalform import (
    PreconditionError,
    apex,
    conical_conjugate,
    is_conical,
    is_pyramidal,
    is_sd_conical,
    normal_form,
    starting_generators,
)
from .quasiroot import (
    HypothesisFailed,
    QuasiRootParams,
    SamplingExhausted,
    TheoremViolation,
    check_all_pairs,
    find_quasi_roots,
    generate_instance,
    verify_quasi_root,
)
from .structure import (
    cyclically_reduce,
    extract_nth_roots,
    is_cyclically_reduced,
    is_non_split,
    is_primitive,
    is_strongly_non_split,
)
from .words import DEFAULT_CAP, CapExceeded, GroupElement, format_word, parse_word, reduce

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class _Usage(Exception):
    pass


def _default_cap() -> int:
    raw = os.environ.get("RAAG_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        return int(raw)
    except ValueError:
        raise _Usage(f"RAAG_CAP must be an integer, got {raw!r}") from None


def _bool(x: bool) -> str:
    return "true" if x else "false"


def _load_graph(args):
    if not args.graph:
        raise _Usage("--graph is required")
    try:
        with open(args.graph, "rb") as fh:
            return parse_graph(fh.read())
    except OSError as exc:
        raise _Usage(f"cannot read graph file: {exc}") from None


def _order(graph, args):
    if not getattr(args, "order", None):
        return graph.default_order()
    try:
        return graph.order(args.order.replace(",", " ").split())
    except ValueError as exc:
        raise _Usage(str(exc)) from None


def _element(graph, text):
    return GroupElement(graph, parse_word(text, graph))


def _params(args):
    try:
        lam = Fraction(args.lam)
    except (ValueError, ZeroDivisionError):
        raise _Usage(f"--lambda must look like p/q, got {args.lam!r}") from None
    try:
        return QuasiRootParams(lam, args.min_power, diagnostic=getattr(args, "diagnostic", False))
    except ValueError as exc:
        raise _Usage(str(exc)) from None


def _emit(args, payload: dict, lines: list[str]):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in lines:
            print(line)


def cmd_reduce(args):
    graph = _load_graph(args)
    w = reduce(graph, parse_word(args.word, graph))
    _emit(args, {"word": format_word(w)}, [format_word(w)])


def cmd_nf(args):
    graph = _load_graph(args)
    w = normal_form(_element(graph, args.word), _order(graph, args))
    _emit(args, {"normal_form": format_word(w)}, [format_word(w)])


def cmd_support(args):
    graph = _load_graph(args)
    g = _element(graph, args.word)
    vs = [v for v in graph.vertices if v in g.support]
    _emit(args, {"support": vs, "length": len(g)}, [" ".join(vs)])


def cmd_startings(args):
    graph = _load_graph(args)
    s = starting_generators(_element(graph, args.word))
    vs = [v for v in graph.vertices if v in s]
    _emit(args, {"starting_generators": vs}, [" ".join(vs)])


def cmd_classify(args):
    graph = _load_graph(args)
    order = _order(graph, args)
    g = _element(graph, args.word)
    info = {
        "conical": is_conical(g),
        "pyramidal": is_pyramidal(g, order),
        "sd-conical": is_sd_conical(g, order),
        "split": not is_non_split(g),
        "strongly-non-split": is_strongly_non_split(g),
        "cyclically-reduced": is_cyclically_reduced(g),
        "primitive": bool(g) and is_primitive(g, args.cap),
    }
    lines = [f"{k}: {_bool(v)}" for k, v in info.items()]
    if info["conical"]:
        info["apex"] = apex(g)
        lines.insert(1, f"apex: {info['apex']}")
    _emit(args, info, lines)


def cmd_conical_conjugate(args):
    graph = _load_graph(args)
    g = _element(graph, args.word)
    r = conical_conjugate(g, args.apex)
    payload = {"p": str(r.p), "a": str(r.a), "b": str(r.b), "k": r.k, "apex": r.v0}
    _emit(args, payload, [f"p: {r.p}", f"a: {r.a}", f"b: {r.b}", f"k: {r.k}"])


def cmd_cyc_reduce(args):
    graph = _load_graph(args)
    r = cyclically_reduce(_element(graph, args.word))
    _emit(args, {"u": str(r.u), "h": str(r.h)}, [f"u: {r.u}", f"h: {r.h}"])


def cmd_roots(args):
    graph = _load_graph(args)
    roots = extract_nth_roots(_element(graph, args.word), args.n, args.cap)
    _emit(args, {"roots": [str(r) for r in roots]}, [str(r) for r in roots])


def _hypotheses(g, cap):
    snp = is_strongly_non_split(g)
    return {"strongly_non_split": snp, "primitive": bool(g) and is_primitive(g, cap)}


def cmd_find_quasiroots(args):
    graph = _load_graph(args)
    params = _params(args)
    h = _element(graph, args.word)
    found = find_quasi_roots(params, h, nontrivial_only=not args.include_trivial, cap=args.cap)
    results = [d.to_json(params, _hypotheses(d.g, args.cap)) for d in found]
    lines = [f"a: {d.a} | g: {d.g} | n: {d.n} | b: {d.b}" for d in found]
    payload = {"h": str(h), "lambda": params.lambda_str, "N": params.N, "results": results}
    _emit(args, payload, lines or ["no quasi-roots"])


def cmd_verify_quasiroot(args):
    graph = _load_graph(args)
    params = _params(args)
    h, a, g, b = (_element(graph, x) for x in (args.word, args.a, args.g, args.b))
    check = verify_quasi_root(params, h, a, g, args.n, b)
    payload = {"h": str(h), "a": str(a), "g": str(g), "n": args.n, "b": str(b),
               "lambda": params.lambda_str, "N": params.N,
               "valid": bool(check), "hypotheses": {k: getattr(check, k) for k in
                                                    ("product", "geodesic", "min_power", "a_bound", "b_bound")}}
    lines = [f"valid: {_bool(bool(check))}"] + [f"failed: {name}" for name in check.failed]
    _emit(args, payload, lines)
    return EXIT_OK if check else EXIT_VIOLATION


def cmd_theorem_check(args):
    graph = _load_graph(args)
    params = _params(args)
    h = _element(graph, args.word)
    found = find_quasi_roots(params, h, cap=args.cap)
    try:
        reports = check_all_pairs(params, found, cap=args.cap)
    except TheoremViolation as exc:
        print(f"theorem violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    eligible = [d for d in found if all(_hypotheses(d.g, args.cap).values())]
    payload = {"h": str(h), "lambda": params.lambda_str, "N": params.N,
               "reports": [dict(d.to_json(), **r.to_json()) for d, r in zip(eligible, reports)]}
    lines = [f"decompositions: {len(found)}", f"strongly non-split primitive: {len(eligible)}"]
    if reports:
        lines.append(f"hypotheses hold: {_bool(reports[0].hypotheses_hold)}")
        failed = sorted({k for r in reports for k in r.failed_hypotheses})
        lines.extend(f"failed hypothesis: {k}" for k in failed)
        lines.append(f"all conjugate: {_bool(all(r.conclusions_hold for r in reports))}")
    _emit(args, payload, lines)


def cmd_random_test(args):
    bad = 0
    rows = []
    for seed in range(args.seed, args.seed + args.trials):
        inst = generate_instance(seed, extra_power=args.extra_power)
        found = find_quasi_roots(inst.params, inst.h, cap=args.cap)
        planted = inst.planted.key() in {d.key() for d in found}
        try:
            reports = check_all_pairs(inst.params, found, cap=args.cap)
            ok = planted
        except TheoremViolation:
            reports, ok = [], False
        bad += not ok
        rows.append({"seed": seed, "vertices": len(inst.graph), "lambda": inst.params.lambda_str,
                     "N": inst.params.N, "h_length": len(inst.h), "found": len(found),
                     "checked": len(reports), "planted_found": planted, "ok": ok})
    lines = [f"seed {r['seed']}: |V|={r['vertices']} lambda={r['lambda']} N={r['N']} "
             f"|h|={r['h_length']} found={r['found']} checked={r['checked']} "
             f"{'ok' if r['ok'] else 'FAIL'}" for r in rows]
    lines.append(f"{args.trials - bad}/{args.trials} passed")
    _emit(args, {"trials": rows, "failures": bad}, lines)
    return EXIT_VIOLATION if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", help="graph file (vertices:/edges: format)")
    common.add_argument("--order", help="vertex order, smallest first (default: file order)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--cap", type=int, default=None, help="enumeration cap (default: RAAG_CAP or 10^6)")

    qr = argparse.ArgumentParser(add_help=False)
    qr.add_argument("--lambda", dest="lam", required=True, help="lambda as p/q")
    qr.add_argument("--min-power", dest="min_power", type=int, required=True, help="N")
    qr.add_argument("--diagnostic", action="store_true", help="admit lambda = 1/2")

    parser = argparse.ArgumentParser(prog="raag", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def word_cmd(name, func, help_, parents=(common,)):
        p = sub.add_parser(name, parents=list(parents), help=help_)
        p.add_argument("word", help='word such as "v2 v4^-1"; "" is the identity')
        p.set_defaults(func=func)
        return p

    word_cmd("reduce", cmd_reduce, "delete innermost cancellations")
    word_cmd("nf", cmd_nf, "CGW normal form")
    word_cmd("support", cmd_support, "support of the element")
    word_cmd("startings", cmd_startings, "starting generators")
    word_cmd("classify", cmd_classify, "conical / pyramidal / SD-conical / splitness / primitivity")
    p = word_cmd("conical-conjugate", cmd_conical_conjugate, "conical conjugate at a chosen apex")
    p.add_argument("--apex", required=True)
    word_cmd("cyc-reduce", cmd_cyc_reduce, "cyclic reduction g = u^-1 h u")
    p = word_cmd("roots", cmd_roots, "n-th roots")
    p.add_argument("--n", type=int, required=True)
    p = word_cmd("find-quasiroots", cmd_find_quasiroots, "all quasi-root decompositions", (common, qr))
    p.add_argument("--include-trivial", action="store_true")
    p = word_cmd("verify-quasiroot", cmd_verify_quasiroot, "check h = a g^n b", (common, qr))
    p.add_argument("--a", default="")
    p.add_argument("--g", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--b", default="")
    word_cmd("theorem-check", cmd_theorem_check, "uniqueness across all quasi-roots", (common, qr))
    p = sub.add_parser("random-test", parents=[common], help="seeded planted-instance harness")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--extra-power", type=int, default=0)
    p.set_defaults(func=cmd_random_test)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.cap is None:
            args.cap = _default_cap()
        return args.func(args) or EXIT_OK
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except TheoremViolation as exc:
        print(f"theorem violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (_Usage, GraphFormatError, PreconditionError, HypothesisFailed, SamplingExhausted,
            KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())
