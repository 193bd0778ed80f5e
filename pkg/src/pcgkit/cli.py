"""Command-line surface.

Subcommands construct, transform, cover, and verify tree
representations of graphs.  Machine-readable output (graph text, JSON
bundles) goes to stdout; human commentary goes to stderr.  Exit codes
are the contract: 0 accept/success, 1 reject, 2 error, 3 budget or
unknown.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .andfactor import roberts_and_cover, verify_and_cover
from .covers import (
    ResourceBudgetError,
    arboricity,
    bipartite_regular_cover,
    deg3_decomposition_search,
    linear_forest_cover,
    triple_partition_cover,
    two_factorization,
    verify_or_cover,
)
from .graphs import SimpleGraph
from .io import (
    cover_to_bundle,
    cover_from_bundle,
    emit_graph,
    graph_to_doc,
    parse_graph,
    parse_tree,
    rep_from_bundle,
    rep_to_bundle,
)
from .recognizer import recognize
from .representations import evaluate
from .search import SearchBudget
from .transforms import (
    complement_multiinterval,
    graph_to_multiinterval,
    integerize,
    normalize_single_interval,
    or_and_duality,
    split_pcg_and2,
)
from .witness import (
    HypothesisViolation,
    check_lower_bound,
    find_disjoint_chordless_cycles,
    gen_fig1,
    gen_Gk,
    gen_Hbar,
    gen_Hk,
    gen_three_K44,
    gk_embedding,
    k44_coloring_lemma_exhaustive,
)

EXIT_OK = 0
EXIT_REJECT = 1
EXIT_ERROR = 2
EXIT_UNKNOWN = 3


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _read_graph(path: str) -> SimpleGraph:
    return parse_graph(_read_text(path))


def _read_bundle(path: str) -> dict:
    return json.loads(_read_text(path))


def _emit_json(doc: dict) -> None:
    json.dump(doc, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _default_jobs() -> int:
    raw = os.environ.get("PCGKIT_JOBS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


# ----- subcommand handlers --------------------------------------------------


def _cmd_eval(args) -> int:
    rep = rep_from_bundle(_read_bundle(args.bundle))
    g = evaluate(rep)
    if args.json:
        _emit_json(graph_to_doc(g))
    else:
        sys.stdout.write(emit_graph(g))
    return EXIT_OK


def _cmd_recognize(args) -> int:
    g = _read_graph(args.graph)
    budget = SearchBudget(max_n=args.max_n,
                          max_topologies=args.max_topologies,
                          time_limit=args.time_limit,
                          jobs=args.jobs)
    res = recognize(g, args.k, budget=budget)
    stats = res.stats
    _say(f"{res.status}: {stats.topologies} topologies, "
         f"{stats.nodes} branch nodes, {stats.lp_solves} solves"
         + (f" ({res.reason})" if res.reason else ""))
    witness_doc = None
    if res.status == "yes":
        witness_doc = rep_to_bundle(res.representation,
                                    provenance=f"recognize --k {args.k}",
                                    check_against=g)
        if args.witness_out:
            with open(args.witness_out, "w", encoding="utf-8") as fh:
                json.dump(witness_doc, fh, indent=2, sort_keys=True)
                fh.write("\n")
    if args.json:
        _emit_json({"kind": "recognition", "status": res.status,
                    "reason": res.reason,
                    "stats": {"topologies": stats.topologies,
                              "nodes": stats.nodes,
                              "lp_solves": stats.lp_solves},
                    "witness": witness_doc})
    if res.status == "yes":
        return EXIT_OK
    if res.status == "no":
        return EXIT_REJECT
    return EXIT_UNKNOWN


def _cmd_transform(args) -> int:
    op = args.op
    if op == "to-multiinterval":
        g = _read_graph(args.input)
        rep = graph_to_multiinterval(g)
        _emit_json(rep_to_bundle(rep, provenance="transform to-multiinterval",
                                 check_against=g))
        return EXIT_OK
    rep = rep_from_bundle(_read_bundle(args.input))
    before = evaluate(rep)
    if op == "integerize":
        out, expect = integerize(rep), before
    elif op == "normalize":
        out, expect = normalize_single_interval(rep), before
    elif op == "complement":
        out, expect = complement_multiinterval(rep), before.complement()
    elif op == "split-and2":
        out, expect = split_pcg_and2(rep.tree, rep.interval), before
    else:  # or-and-dual
        out, expect = or_and_duality(rep), before.complement()
    _emit_json(rep_to_bundle(out, provenance=f"transform {op}",
                             check_against=expect))
    return EXIT_OK


def _cmd_cover(args) -> int:
    g = _read_graph(args.graph)
    kind = args.kind
    extra: dict = {}
    if kind == "linear-forest":
        mode = "exact" if args.exact else "greedy"
        cover = linear_forest_cover(g, mode=mode, max_nodes=args.max_nodes)
    elif kind == "triples":
        cover = triple_partition_cover(g)
    elif kind == "arboricity":
        value, cover = arboricity(g)
        extra["arboricity"] = value
    elif kind == "two-factor":
        cover = two_factorization(g)
    elif kind == "bip-regular":
        cover = bipartite_regular_cover(g)
    else:  # deg3
        cover = deg3_decomposition_search(g, max_nodes=args.max_nodes)
    cert = verify_or_cover(g, cover)
    doc = cover_to_bundle(cover, cert, provenance=f"cover {kind}")
    doc.update(extra)
    _emit_json(doc)
    if not cert.ok:
        _say(f"cover rejected: {cert.reason}")
        return EXIT_REJECT
    _say(f"{len(cover.parts)} parts, certificate ok")
    return EXIT_OK


def _cmd_gen(args) -> int:
    family = args.family
    if family in ("gk", "hk") and args.k is None:
        raise ValueError(f"gen {family} requires --k")
    if family == "gk":
        g = gen_Gk(args.k)
    elif family == "hk":
        g = gen_Hk(args.k)
    elif family == "3k44":
        g = gen_three_K44()
    elif family == "hbar":
        g = gen_Hbar()
    else:  # fig1
        g = gen_fig1()
    sys.stdout.write(emit_graph(g))
    return EXIT_OK


def _cmd_verify(args) -> int:
    what = args.what
    if what == "or-cover":
        g = _read_graph(args.graph)
        cover = cover_from_bundle(_read_bundle(args.cover))
        cert = verify_or_cover(g, cover)
        if args.json:
            _emit_json({"kind": "certificate", "ok": cert.ok,
                        "parts": cert.parts, "reason": cert.reason})
        if cert.ok:
            _say(f"or-cover accepted: {cert.parts} parts")
            return EXIT_OK
        _say(f"or-cover rejected: {cert.reason}")
        return EXIT_REJECT

    if what == "and-cover":
        g = _read_graph(args.graph)
        rep = rep_from_bundle(_read_bundle(args.rep))
        cert = verify_and_cover(g, rep)
        if args.json:
            _emit_json({"kind": "certificate", "ok": cert.ok,
                        "parts": cert.parts, "reason": cert.reason})
        if cert.ok:
            _say(f"and-cover accepted: {cert.parts} factors")
            return EXIT_OK
        _say(f"and-cover rejected: {cert.reason}")
        return EXIT_REJECT

    if what == "lower-bound":
        tree = parse_tree(_read_text(args.tree))
        try:
            cert = check_lower_bound(tree, gk_embedding(args.k))
        except HypothesisViolation as exc:
            _say(f"rejected at index {exc.index}: {exc}")
            return EXIT_REJECT
        print(f"bound {cert.bound}: any single-tree representation "
              f"needs >= {cert.bound} intervals")
        return EXIT_OK

    if what == "k44-lemma":
        report = k44_coloring_lemma_exhaustive()
        good = report.total_colorings - report.violations
        print(f"{good}/{report.total_colorings} colorings pass")
        if args.json:
            _emit_json({"kind": "k44-report",
                        "total": report.total_colorings,
                        "violations": report.violations,
                        "chordless_failures": report.chordless_failures,
                        "passed": report.passed})
        return EXIT_OK if report.passed else EXIT_REJECT

    # disjoint-cycles
    g = _read_graph(args.graph)
    res = find_disjoint_chordless_cycles(g, max_nodes=args.max_nodes)
    if res.status == "found":
        cert = res.certificate
        print("cycle_a " + " ".join(cert.cycle_a))
        print("cycle_b " + " ".join(cert.cycle_b))
        return EXIT_OK
    if res.status == "none":
        _say(f"no two disjoint chordless cycles ({res.nodes} nodes searched)")
        return EXIT_REJECT
    _say(f"search budget exhausted after {res.nodes} nodes")
    return EXIT_UNKNOWN


def _cmd_stats(args) -> int:
    g = _read_graph(args.graph)
    if args.json:
        _emit_json({"kind": "stats", "vertices": g.n, "edges": g.m,
                    "components": len(g.components()),
                    "min_degree": g.min_degree(), "max_degree": g.max_degree()})
    else:
        print(f"{g.n} vertices, {g.m} edges")
    return EXIT_OK


# ----- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcgkit",
        description="tree representations of graphs: construct, transform, "
                    "cover, recognize, verify")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a representation bundle")
    p.add_argument("bundle", nargs="?", default="-",
                   help="bundle JSON path or - for stdin")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("recognize", help="exhaustive representation search")
    p.add_argument("graph", nargs="?", default="-")
    p.add_argument("--k", type=int, default=1,
                   help="number of intervals (default 1)")
    p.add_argument("--max-topologies", type=int, default=None)
    p.add_argument("--time-limit", type=float, default=None,
                   help="seconds before giving up")
    p.add_argument("--max-n", type=int, default=None,
                   help="largest leaf count the search will attempt")
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.add_argument("--witness-out", default=None,
                   help="write the witness bundle here on yes")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_recognize)

    p = sub.add_parser("transform", help="rewrite a representation")
    p.add_argument("op", choices=["integerize", "normalize", "complement",
                                  "to-multiinterval", "split-and2",
                                  "or-and-dual"])
    p.add_argument("input", nargs="?", default="-",
                   help="bundle JSON (graph text for to-multiinterval)")
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("cover", help="edge covers with certified parts")
    p.add_argument("kind", choices=["linear-forest", "triples", "arboricity",
                                    "two-factor", "bip-regular", "deg3"])
    p.add_argument("graph", nargs="?", default="-")
    p.add_argument("--exact", action="store_true",
                   help="linear-forest: search for the optimum")
    p.add_argument("--max-nodes", type=int, default=2_000_000)
    p.set_defaults(func=_cmd_cover)

    p = sub.add_parser("gen", help="generator families")
    p.add_argument("family", choices=["gk", "hk", "3k44", "hbar", "fig1"])
    p.add_argument("--k", type=int, default=None)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("verify", help="check certificates and lemmas")
    vsub = p.add_subparsers(dest="what", required=True)

    v = vsub.add_parser("or-cover")
    v.add_argument("--graph", required=True)
    v.add_argument("--cover", required=True)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=_cmd_verify)

    v = vsub.add_parser("and-cover")
    v.add_argument("--graph", required=True)
    v.add_argument("--rep", required=True)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=_cmd_verify)

    v = vsub.add_parser("lower-bound")
    v.add_argument("--tree", required=True, help="newick tree path or -")
    v.add_argument("--k", type=int, required=True)
    v.set_defaults(func=_cmd_verify)

    v = vsub.add_parser("k44-lemma")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=_cmd_verify)

    v = vsub.add_parser("disjoint-cycles")
    v.add_argument("graph", nargs="?", default="-")
    v.add_argument("--max-nodes", type=int, default=2_000_000)
    v.set_defaults(func=_cmd_verify)

    p = sub.add_parser("stats", help="basic counts for a graph file")
    p.add_argument("graph", nargs="?", default="-")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_stats)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ResourceBudgetError as exc:
        _say(f"budget: {exc}")
        return EXIT_UNKNOWN
    except (ValueError, OSError, KeyError, TypeError) as exc:
        _say(f"error: {exc}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
