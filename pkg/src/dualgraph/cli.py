"""Command line interface.

Exit codes: 0 ok, 1 a check failed, 2 bad input or precondition, 3 invariant violation.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, TextIO, Tuple

from . import __version__
from .birational import ReductionTrace, build_Z, reduce_to_trivial
from .boundary import BoundaryConfig, KValue, classify_K, comb_decompose, validate_boundary
from .construct import EnumerationConfig, FILTERS, enumerate_boundaries, summarize_components
from .corpus import CORPUS, jsonable, verify_paper
from .cycles import compute_d_sharp, pa_genus, parse_cycle
from .errors import GraphError, InvariantViolation, PreconditionError
from .graph import WeightedDualGraph, connected_components, determinant_d, is_negative_definite
from .singularity import is_rational, max_pa_bounded
from .textformat import emit_graph, read_graph

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2, 3


class Output:
    def __init__(self, as_json: bool, quiet: bool, stream: TextIO) -> None:
        self.as_json = as_json
        self.quiet = quiet
        self.stream = stream

    def emit(self, payload: Dict[str, Any], text: Callable[[], List[str]]) -> None:
        if self.quiet:
            return
        if self.as_json:
            self.stream.write(json.dumps(jsonable(payload), sort_keys=True) + "\n")
        else:
            for line in text():
                self.stream.write(line + "\n")


def _load(path: str) -> Tuple[WeightedDualGraph, Optional[str]]:
    return read_graph(path)


def _boundary(path: str) -> BoundaryConfig:
    g, c = _load(path)
    if c is None:
        raise PreconditionError(f"{path}: no curve marked with a 'c' line")
    return BoundaryConfig(g, c)


def _exceptional(path: str) -> WeightedDualGraph:
    """D when C is marked, the whole graph otherwise."""
    g, c = _load(path)
    return BoundaryConfig(g, c).D if c is not None else g


def _range(text: str) -> List[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",") if x]


# -- subcommands ---------------------------------------------------------------


def cmd_det(args: argparse.Namespace, out: Output) -> int:
    g, c = _load(args.file)
    payload: Dict[str, Any] = {"determinant": determinant_d(g)}
    if c is not None:
        payload["determinant_D"] = determinant_d(BoundaryConfig(g, c).D)
    lines = [f"d = {payload['determinant']}"]
    if "determinant_D" in payload:
        lines.append(f"d(D) = {payload['determinant_D']}")
    out.emit(payload, lambda: lines)
    return EXIT_OK


def cmd_negdef(args: argparse.Namespace, out: Output) -> int:
    g = _exceptional(args.file)
    ok = is_negative_definite(g)
    out.emit({"negative_definite": ok}, lambda: [f"negative definite: {'yes' if ok else 'no'}"])
    return EXIT_OK if ok else EXIT_CHECK


def cmd_dsharp(args: argparse.Namespace, out: Output) -> int:
    g, c = _load(args.file)
    if c is not None:
        b = BoundaryConfig(g, c)
        res = compute_d_sharp(b.D, b.c_neighbors)
    else:
        res = compute_d_sharp(g)
    coeffs = {v: res.cycle[v] for v in res.cycle.graph.ids}
    payload = {"d_sharp": coeffs, "c_pairing": res.c_pairing, "integral": res.integral}

    def text() -> List[str]:
        lines = [f"{v} {a}" for v, a in coeffs.items()]
        if res.c_pairing is not None:
            lines.append(f"(D#.C) = {res.c_pairing}")
        return lines

    out.emit(payload, text)
    return EXIT_OK


def cmd_pa(args: argparse.Namespace, out: Output) -> int:
    g = _exceptional(args.file)
    z = parse_cycle(g, args.cycle)
    pa = pa_genus(z)
    out.emit({"cycle": z.literal(), "p_a": pa}, lambda: [f"p_a = {pa}"])
    return EXIT_OK


def _rationality(g: WeightedDualGraph) -> List[Dict[str, Any]]:
    rows = []
    for comp in connected_components(g):
        rep = is_rational(comp)
        rows.append(
            {
                "vertices": comp.ids,
                "fundamental_cycle": rep.fundamental_cycle.literal(),
                "p_a": rep.pa_fundamental,
                "rational": rep.rational,
                "kind": rep.kind.value,
                "iterations": rep.iterations,
            }
        )
    return rows


def cmd_rational(args: argparse.Namespace, out: Output) -> int:
    rows = _rationality(_exceptional(args.file))
    out.emit(
        {"components": rows},
        lambda: [
            f"{'rational' if r['rational'] else 'not rational'} {r['kind']} p_a(Z)={r['p_a']} Z: {r['fundamental_cycle']}"
            for r in rows
        ],
    )
    return EXIT_OK


def cmd_maxpa(args: argparse.Namespace, out: Output) -> int:
    g = _exceptional(args.file)
    rows = []
    for comp in connected_components(g):
        value, witness = max_pa_bounded(comp, args.bound, method=args.method)
        rows.append({"vertices": comp.ids, "max_p_a": value, "witness": witness.literal()})
    out.emit(
        {"bound": args.bound, "components": rows},
        lambda: [f"max p_a = {r['max_p_a']} at {r['witness']}" for r in rows],
    )
    return EXIT_OK


def cmd_classify(args: argparse.Namespace, out: Output) -> int:
    b = _boundary(args.file)
    k = classify_K(b)
    comps = [
        {"size": s.size, "branched": s.branched, "rational": s.rational} for s in summarize_components(b)
    ]
    payload = {"class": k.value.value, "c_pairing": k.c_pairing, "components": comps}

    def text() -> List[str]:
        lines = [f"K {k.value.value} (D#.C) = {k.c_pairing}"]
        for s in comps:
            verdict = {True: "rational", False: "not rational", None: "not checked"}[s["rational"]]
            lines.append(f"component of {s['size']} curve(s), {'branched' if s['branched'] else 'chain'}: {verdict}")
        return lines

    out.emit(payload, text)
    return EXIT_OK


def cmd_reduce(args: argparse.Namespace, out: Output) -> int:
    b = _boundary(args.file)
    trace = reduce_to_trivial(b)
    data = trace.to_json()
    if args.trace:
        Path(args.trace).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")

    def text() -> List[str]:
        lines = [
            f"contract {s['contracted']} case {s['case']} -> C={s['new_c']} (D#.C)={s['c_pairing'] or '-'}"
            for s in data["steps"]
        ]
        return lines + [emit_graph(trace.final.graph, trace.final.c_id).rstrip("\n")]

    out.emit(data, text)
    return EXIT_OK


def cmd_buildz(args: argparse.Namespace, out: Output) -> int:
    b = _boundary(args.file)
    cls = classify_K(b)
    if cls.value is KValue.TRIVIAL:
        trace = ReductionTrace.identity(b)
    else:
        trace = reduce_to_trivial(b)
    z = build_Z(b, trace)
    out.emit({"z": z.literal(), "p_a": pa_genus(z)}, lambda: [z.literal()])
    return EXIT_OK


def cmd_shape(args: argparse.Namespace, out: Output) -> int:
    b = _boundary(args.file)
    report = validate_boundary(b)
    comb = comb_decompose(b)
    checks = {name: {"passed": c.passed, "detail": c.detail} for name, c in report.checks.items()}
    if comb:
        comb_json: Dict[str, Any] = {
            "r": comb.r,
            "degenerate": comb.degenerate,
            "spine": list(comb.spine),
            "chains": [list(x) for x in comb.chains],
            "twigs": [list(x) for x in comb.twigs],
        }
    else:
        comb_json = {"mismatch": comb.reason}

    def text() -> List[str]:
        lines = [f"{'ok  ' if c.passed else 'FAIL'} {name}: {c.detail}" for name, c in report.checks.items()]
        if comb:
            lines.append(f"comb r={comb.r} s={comb.s} t={comb.t}{' (degenerate)' if comb.degenerate else ''}")
            lines.append(f"spine: {' '.join(comb.spine) or '-'}")
        else:
            lines.append(f"no comb: {comb.reason}")
        return lines

    out.emit({"checks": checks, "valid": report.ok, "comb": comb_json}, text)
    return EXIT_OK if report.ok and comb else EXIT_CHECK


def cmd_enumerate(args: argparse.Namespace, out: Output) -> int:
    filters = tuple(f for f in args.filter.split(",") if f) if args.filter else ()
    config = EnumerationConfig(
        m_values=tuple(_range(args.m)),
        depth=args.depth,
        filters=filters,
        classify=args.classify,
        max_depth=args.max_depth,
        max_boundaries=args.max_boundaries,
    )
    found = enumerate_boundaries(config)
    records = [e.to_json() for e in found]
    if isinstance(args.json, str):
        with open(args.json, "w") as fh:
            for r in records:
                fh.write(json.dumps(jsonable(r), sort_keys=True) + "\n")
        out.as_json = False
        out.emit({}, lambda: [f"{len(records)} boundaries written to {args.json}"])
        return EXIT_OK
    if out.as_json and not out.quiet:
        for r in records:
            out.stream.write(json.dumps(jsonable(r), sort_keys=True) + "\n")
        return EXIT_OK

    def text() -> List[str]:
        lines = []
        for r in records:
            cls = f" {r['k_class']} {r['c_pairing']}" if r["k_class"] else ""
            lines.append(f"m={r['m']} depth={r['depth']}{cls} {r['canonical']}")
        lines.append(f"{len(records)} boundaries")
        return lines

    out.emit({}, text)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, out: Output) -> int:
    names = args.entry or None
    if names:
        unknown = [n for n in names if n not in CORPUS]
        if unknown:
            raise PreconditionError(f"unknown corpus entr{'y' if len(unknown) == 1 else 'ies'}: {', '.join(unknown)}")
    report = verify_paper(names)
    payload = report.to_json()
    payload["version"] = __version__
    out.emit(payload, report.lines)
    return EXIT_OK if report.ok else EXIT_CHECK


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--quiet", action="store_true", help="no output; rely on the exit code")

    parser = argparse.ArgumentParser(prog="dualgraph", description=__doc__.splitlines()[0])
    parser.add_argument("--json", dest="global_json", action="store_true", help="machine-readable output")
    parser.add_argument("--quiet", dest="global_quiet", action="store_true", help="no output")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func: Callable, help_: str, file: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_, parents=[common])
        if file:
            p.add_argument("file", help="graph file")
        p.set_defaults(func=func)
        return p

    add("det", cmd_det, "determinant of -I for the graph (and for D when C is marked)")
    add("negdef", cmd_negdef, "is the intersection matrix of D negative definite")
    add("dsharp", cmd_dsharp, "the anti-canonical cycle D# and (D#.C)")
    p = add("pa", cmd_pa, "arithmetic genus of a cycle")
    p.add_argument("--cycle", required=True, help="literal such as D1=2,D2=1")
    add("rational", cmd_rational, "Laufer test on each component of D")
    p = add("maxpa", cmd_maxpa, "largest p_a over cycles with coefficients in [1, bound]")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--method", choices=("auto", "dp", "brute"), default="auto")
    add("classify", cmd_classify, "canonical class of the contracted surface")
    p = add("reduce", cmd_reduce, "contract down to a K-trivial boundary")
    p.add_argument("--trace", help="write the step list as JSON to this path")
    add("buildz", cmd_buildz, "integral cycle of arithmetic genus one on D")
    add("shape", cmd_shape, "validation checks and comb decomposition")

    p = sub.add_parser("enumerate", help="search blow-up sequences over Hirzebruch seeds")
    p.add_argument("--json", nargs="?", const=True, default=False, metavar="PATH", help="JSON lines, to PATH if given")
    p.add_argument("--quiet", action="store_true")
    p.add_argument("--m", default="2..4", help="seed values, e.g. 2..4 or 2,3")
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--filter", default="negdef,minres", help=f"comma list from {','.join(FILTERS)}")
    p.add_argument("--classify", action="store_true", help="attach K class and component rationality")
    p.add_argument("--max-depth", type=int, default=EnumerationConfig.max_depth)
    p.add_argument("--max-boundaries", type=int, default=EnumerationConfig.max_boundaries)
    p.set_defaults(func=cmd_enumerate)

    p = add("verify-paper", cmd_verify, "check every corpus expectation", file=False)
    p.add_argument("--entry", action="append", help="restrict to this corpus entry (repeatable)")
    return parser


def main(argv: Optional[Sequence[str]] = None, stream: Optional[TextIO] = None) -> int:
    stream = stream or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    args.quiet = args.quiet or args.global_quiet
    if args.global_json and args.json is False:
        args.json = True
    out = Output(bool(args.json), args.quiet, stream)

    def fail(code: int, exc: BaseException) -> int:
        kind = type(exc).__name__
        if out.as_json:
            stream.write(json.dumps({"error": {"code": code, "type": kind, "message": str(exc)}}, sort_keys=True) + "\n")
        elif not args.quiet:
            sys.stderr.write(f"error: {exc}\n")
        return code

    try:
        return args.func(args, out)
    except InvariantViolation as exc:
        return fail(EXIT_INVARIANT, exc)
    except (GraphError, PreconditionError, OSError, ValueError, ZeroDivisionError) as exc:
        return fail(EXIT_INPUT, exc)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
