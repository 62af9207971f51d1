"""Command line entry point.

Every operation is a subcommand reading the text formats from
graph-core (and the cost-annotated digraph format for facility
location).  Exit codes: 0 success or decision-yes, 1 decision-no,
2 usage or input error, 3 search budget exhausted.  ``--json`` prints
one machine-readable object validating against the shipped schemas;
``--dot`` additionally saves the produced graph for figures.
"""

from __future__ import annotations

import argparse
import json
import signal
import sys
from pathlib import Path
from typing import Optional, Sequence

from .coloring import color_trianglefree_fl, edgecolor_reduction
from .core import (
    Digraph,
    UGraph,
    digraph_to_dot,
    parse_digraph,
    parse_ugraph,
    serialize_digraph,
    serialize_ugraph,
    ugraph_to_dot,
)
from .gadgets import (
    assemble_GF,
    parse_dimacs_cnf,
    verify_gad1,
    verify_gad2,
    witness_from_assignment,
)
from .intersect import PATTERNS, detect_patterns, intersection_graph
from .optimize import max_stable_set, parse_uflp, solve_uflp
from .recognize import Refusal, recognize
from .reductions import cubic_to_hard_digraph, poljak_subdivision
from .search import enumerate_preimages

__all__ = ["main"]


class _TimeLimit(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ValueError("cannot read %s: %s" % (path, exc)) from exc


def _digraph_json(d: Digraph) -> dict:
    return {"n": d.n, "arcs": [[t, h] for t, h in d.arcs]}


def _ugraph_json(g: UGraph) -> dict:
    obj: dict = {"n": g.n, "edges": [list(e) for e in sorted(g.edges)]}
    if g.weights is not None:
        obj["weights"] = {str(v): str(w) for v, w in sorted(g.weights.items())}
    return obj


def _emit(args: argparse.Namespace, obj: dict, human: str) -> None:
    if args.json:
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        sys.stdout.write(human)


def _dot(args: argparse.Namespace, text: str) -> None:
    if getattr(args, "dot", None):
        Path(args.dot).write_text(text)


def _cert_line(mapping: Sequence[int]) -> str:
    return json.dumps({"map": {str(v): a for v, a in enumerate(mapping)}}) + "\n"


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_intersect(args: argparse.Namespace) -> int:
    d = parse_digraph(_read(args.file))
    g, cert = intersection_graph(d)
    _dot(args, ugraph_to_dot(g))
    obj = {
        "ugraph": _ugraph_json(g),
        "map": {str(v): a for v, a in enumerate(cert.mapping)},
    }
    _emit(args, obj, serialize_ugraph(g) + _cert_line(cert.mapping))
    return 0


def _cmd_recognize(args: argparse.Namespace) -> int:
    g = parse_ugraph(_read(args.file))
    result = recognize(g)
    if isinstance(result, Refusal):
        obj = {
            "accepted": False,
            "component": list(result.component),
            "cycles": result.cycles,
        }
        print(json.dumps(obj, indent=2 if args.json else None, sort_keys=True))
        return 1
    d, cert = result
    _dot(args, digraph_to_dot(d))
    obj = {
        "accepted": True,
        "digraph": _digraph_json(d),
        "certificate": list(cert.mapping),
    }
    _emit(args, obj, serialize_digraph(d) + _cert_line(cert.mapping))
    return 0


def _cmd_color(args: argparse.Namespace) -> int:
    g = parse_ugraph(_read(args.file))
    coloring = color_trianglefree_fl(g)
    obj = {
        "colors": {str(v): c for v, c in enumerate(coloring.colors)},
        "count": coloring.count,
    }
    human = "".join("%d %d\n" % (v, c) for v, c in enumerate(coloring.colors))
    _emit(args, obj, human + "count %d\n" % coloring.count)
    return 0


def _cmd_preimages(args: argparse.Namespace) -> int:
    g = parse_ugraph(_read(args.file))
    result = enumerate_preimages(
        g, node_budget=args.budget, dedup=not args.no_dedup, jobs=args.jobs
    )
    obj: dict = {"count": result.count}
    if result.budget_hit:
        obj["budget_hit"] = True
        obj["node_budget"] = result.node_budget
    if args.count_only:
        print(json.dumps(obj, indent=2 if args.json else None, sort_keys=True))
        return 3 if result.budget_hit else 0
    obj["witnesses"] = [
        {"digraph": _digraph_json(d), "certificate": list(cert.mapping)}
        for d, cert in result.members
    ]
    human = "count %d\n" % result.count + "".join(
        serialize_digraph(d) + _cert_line(cert.mapping) for d, cert in result.members
    )
    _emit(args, obj, human)
    return 3 if result.budget_hit else 0


def _cmd_reduce_sat2flg(args: argparse.Namespace) -> int:
    f = parse_dimacs_cnf(_read(args.file))
    g, labels = assemble_GF(f)
    _dot(args, ugraph_to_dot(g))
    obj = {"ugraph": _ugraph_json(g), "labels": dict(sorted(labels.node_of.items()))}
    human = serialize_ugraph(g) + json.dumps({"labels": obj["labels"]}) + "\n"
    _emit(args, obj, human)
    return 0


def _cmd_reduce_poljak(args: argparse.Namespace) -> int:
    g = parse_ugraph(_read(args.file))
    sub, pair = poljak_subdivision(g)
    _dot(args, ugraph_to_dot(sub))
    inner = {"%d,%d" % e: list(p) for e, p in sorted(pair.items())}
    obj = {"ugraph": _ugraph_json(sub), "inner_nodes": inner}
    _emit(args, obj, serialize_ugraph(sub) + json.dumps({"inner_nodes": inner}) + "\n")
    return 0


def _cmd_reduce_edgecolor(args: argparse.Namespace) -> int:
    g = parse_ugraph(_read(args.file))
    d, pair = edgecolor_reduction(g, args.k)
    _dot(args, digraph_to_dot(d))
    arcs = {"%d,%d" % e: list(p) for e, p in sorted(pair.items())}
    obj = {"digraph": _digraph_json(d), "edge_arcs": arcs}
    _emit(args, obj, serialize_digraph(d) + json.dumps({"edge_arcs": arcs}) + "\n")
    return 0


def _cmd_reduce_cubic2flg(args: argparse.Namespace) -> int:
    g = parse_ugraph(_read(args.file))
    d, cert = cubic_to_hard_digraph(g)
    _dot(args, digraph_to_dot(d))
    obj = {"digraph": _digraph_json(d), "certificate": list(cert.mapping)}
    _emit(args, obj, serialize_digraph(d) + _cert_line(cert.mapping))
    return 0


def _cmd_witness(args: argparse.Namespace) -> int:
    f = parse_dimacs_cnf(_read(args.file))
    d, cert = witness_from_assignment(f, args.values)
    _dot(args, digraph_to_dot(d))
    obj = {"digraph": _digraph_json(d), "certificate": list(cert.mapping)}
    _emit(args, obj, serialize_digraph(d) + _cert_line(cert.mapping))
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.gadget == "gad1":
        report = verify_gad1(jobs=args.jobs)
    else:
        report = verify_gad2(jobs=args.jobs, node_budget=args.budget)
        if "all_pendants_entering" in report:
            report = dict(report)
            report["all_entering"] = report.pop("all_pendants_entering")
    print(json.dumps(report, indent=2 if args.json else None, sort_keys=True))
    if report["status"] == "unknown":
        return 3
    return 0 if report["status"] == "pass" else 1


def _cmd_solve_stable(args: argparse.Namespace) -> int:
    g = parse_ugraph(_read(args.file))
    s = max_stable_set(g)
    obj = {"nodes": sorted(s.nodes), "weight": str(s.weight)}
    _emit(args, obj, "nodes %s\nweight %s\n" % (" ".join(map(str, sorted(s.nodes))), s.weight))
    return 0


def _cmd_solve_uflp(args: argparse.Namespace) -> int:
    inst = parse_uflp(_read(args.file))
    sol = solve_uflp(inst)
    obj = {
        "open": sorted(sol.open_set),
        "assignment": {str(v): a for v, a in sorted(sol.assignment.items())},
        "objective": str(sol.objective),
    }
    human = "open %s\n" % " ".join(map(str, sorted(sol.open_set)))
    human += "".join("assign %d %d\n" % (v, a) for v, a in sorted(sol.assignment.items()))
    _emit(args, obj, human + "objective %s\n" % sol.objective)
    return 0


def _cmd_patterns(args: argparse.Namespace) -> int:
    d = parse_digraph(_read(args.file))
    names = args.forbid.split(",") if args.forbid else sorted(PATTERNS)
    unknown = [x for x in names if x not in PATTERNS]
    if unknown:
        raise ValueError("unknown pattern name(s): %s" % ", ".join(unknown))
    hits = [
        {"pattern": name, "nodes": list(nodes)}
        for name, nodes in detect_patterns(d, [PATTERNS[x] for x in names])
    ]
    obj = {"hits": hits}
    human = "".join("%s %s\n" % (h["pattern"], " ".join(map(str, h["nodes"]))) for h in hits)
    _emit(args, obj, human or "no patterns\n")
    return 1 if args.forbid and hits else 0


# ---------------------------------------------------------------------------
# parser


def _add_common(p: argparse.ArgumentParser, dot: bool = False) -> None:
    p.add_argument("--json", action="store_true", help="machine-readable output")
    if dot:
        p.add_argument("--dot", metavar="PATH", help="also write the result as DOT")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flg")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("intersect", help="intersection graph of a digraph")
    p.add_argument("file")
    _add_common(p, dot=True)
    p.set_defaults(func=_cmd_intersect)

    p = sub.add_parser("recognize", help="decide membership, emit preimage or refusal")
    p.add_argument("file")
    _add_common(p, dot=True)
    p.set_defaults(func=_cmd_recognize)

    p = sub.add_parser("color", help="3-color an accepted triangle-free graph")
    p.add_argument("file")
    _add_common(p)
    p.set_defaults(func=_cmd_color)

    p = sub.add_parser("preimages", help="enumerate preimages of a small graph")
    p.add_argument("file")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--budget", type=int, default=None, metavar="N",
                   help="digraph node budget (default 2|V|)")
    p.add_argument("--no-dedup", action="store_true",
                   help="include non-canonical preimages")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--time-limit", type=float, default=None, metavar="SEC")
    _add_common(p)
    p.set_defaults(func=_cmd_preimages)

    reduce_p = sub.add_parser("reduce", help="hardness constructions")
    rsub = reduce_p.add_subparsers(dest="reduction", required=True)

    p = rsub.add_parser("sat2flg", help="recognition instance of a 3-SAT formula")
    p.add_argument("file", help="DIMACS cnf file")
    _add_common(p, dot=True)
    p.set_defaults(func=_cmd_reduce_sat2flg)

    p = rsub.add_parser("poljak", help="3-edge-path subdivision")
    p.add_argument("file")
    _add_common(p, dot=True)
    p.set_defaults(func=_cmd_reduce_poljak)

    p = rsub.add_parser("edgecolor", help="edge-coloring to vertex-coloring digraph")
    p.add_argument("file")
    p.add_argument("--k", type=int, required=True, help="color count")
    _add_common(p, dot=True)
    p.set_defaults(func=_cmd_reduce_edgecolor)

    p = rsub.add_parser("cubic2flg", help="pattern-free preimage of a cubic subdivision")
    p.add_argument("file")
    _add_common(p, dot=True)
    p.set_defaults(func=_cmd_reduce_cubic2flg)

    p = sub.add_parser("witness", help="preimage witnessing a satisfying assignment")
    p.add_argument("file", help="DIMACS cnf file")
    p.add_argument("values", type=int, nargs="+", help="0/1 per variable, in order")
    _add_common(p, dot=True)
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("verify", help="re-check a gadget lemma by enumeration")
    p.add_argument("gadget", choices=["gad1", "gad2"])
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=int, default=None, metavar="N")
    p.add_argument("--time-limit", type=float, default=None, metavar="SEC")
    _add_common(p)
    p.set_defaults(func=_cmd_verify)

    solve_p = sub.add_parser("solve", help="exact desk-scale optimization")
    ssub = solve_p.add_subparsers(dest="problem", required=True)

    p = ssub.add_parser("stable", help="maximum weight stable set")
    p.add_argument("file")
    _add_common(p)
    p.set_defaults(func=_cmd_solve_stable)

    p = ssub.add_parser("uflp", help="facility location via the stable set route")
    p.add_argument("file", help="digraph with f/k cost lines")
    _add_common(p)
    p.set_defaults(func=_cmd_solve_uflp)

    p = sub.add_parser("patterns", help="find forbidden subdigraph embeddings")
    p.add_argument("file")
    p.add_argument("--forbid", metavar="NAMES",
                   help="comma-separated pattern names; any hit exits 1")
    _add_common(p)
    p.set_defaults(func=_cmd_patterns)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    limit = getattr(args, "time_limit", None)

    def _alarm(signum, frame):
        raise _TimeLimit

    if limit is not None and hasattr(signal, "SIGALRM"):
        signal.signal(signal.SIGALRM, _alarm)
        signal.setitimer(signal.ITIMER_REAL, limit)
    try:
        return args.func(args)
    except _TimeLimit:
        print("error: time limit exhausted", file=sys.stderr)
        return 3
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    finally:
        if limit is not None and hasattr(signal, "SIGALRM"):
            signal.setitimer(signal.ITIMER_REAL, 0)


if __name__ == "__main__":
    sys.exit(main())
