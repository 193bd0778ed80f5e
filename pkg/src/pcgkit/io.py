"""Plain-text graph files, weighted newick trees, and JSON bundles.

Graph files: a `n <count>` header, optional `v <label>` declarations,
one `u v` edge per line, `#` comments.  Trees: newick with an exact
weight after every `:` (integer, decimal, or `p/q`).  Bundles: JSON
documents for representations and edge covers whose rationals are
`p/q` strings, never floats; emission is deterministic (lexicographic)
so serialized artifacts diff cleanly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .covers import CoverCertificate, EdgeCover, edge_cover
from .graphs import SimpleGraph
from .representations import Interval, Representation, Variant, evaluate
from .trees import WeightedTree


# ----- graph text format ---------------------------------------------------


def parse_graph(text: str) -> SimpleGraph:
    """Read the `n/v/edge` format; errors carry the offending line."""
    count: int | None = None
    declared: list[str] = []
    edges: list[tuple[int, str, str]] = []
    seen_edges: set[frozenset[str]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        if count is None:
            if len(tok) != 2 or tok[0] != "n" or not tok[1].isdigit():
                raise ValueError(f"line {lineno}: expected header 'n <count>'")
            count = int(tok[1])
            continue
        if tok[0] == "n":
            raise ValueError(f"line {lineno}: duplicate 'n' header")
        if tok[0] == "v":
            if len(tok) != 2:
                raise ValueError(f"line {lineno}: expected 'v <label>'")
            if tok[1] in declared:
                raise ValueError(f"line {lineno}: duplicate vertex {tok[1]!r}")
            declared.append(tok[1])
            continue
        if len(tok) != 2:
            raise ValueError(f"line {lineno}: expected an edge 'u v'")
        u, v = tok
        if u == v:
            raise ValueError(f"line {lineno}: self-loop at {u!r}")
        key = frozenset((u, v))
        if key in seen_edges:
            raise ValueError(f"line {lineno}: duplicate edge {u} {v}")
        seen_edges.add(key)
        edges.append((lineno, u, v))
    if count is None:
        raise ValueError("missing 'n <count>' header")
    if declared:
        # explicit declarations close the vertex set
        known = set(declared)
        for lineno, u, v in edges:
            for lab in (u, v):
                if lab not in known:
                    raise ValueError(f"line {lineno}: unknown label {lab!r}")
        vertices = declared
    else:
        vertices = sorted({lab for _, u, v in edges for lab in (u, v)})
    if len(vertices) != count:
        raise ValueError(f"vertex count mismatch: header says {count}, "
                         f"found {len(vertices)}")
    return SimpleGraph(vertices, [(u, v) for _, u, v in edges])


def emit_graph(g: SimpleGraph) -> str:
    lines = [f"n {g.n}"]
    lines += [f"v {v}" for v in g.vertices]
    lines += [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


# ----- newick trees --------------------------------------------------------


@dataclass
class _NewickNode:
    name: str
    children: list  # of (node, Fraction)


def _parse_newick(s: str) -> _NewickNode:
    pos = 0

    def fail(msg: str):
        raise ValueError(f"newick position {pos}: {msg}")

    def skip_ws():
        nonlocal pos
        while pos < len(s) and s[pos].isspace():
            pos += 1

    def parse_name() -> str:
        nonlocal pos
        start = pos
        while pos < len(s) and s[pos] not in "():,;" and not s[pos].isspace():
            pos += 1
        return s[start:pos]

    def parse_weight() -> Fraction:
        nonlocal pos
        start = pos
        while pos < len(s) and (s[pos].isdigit() or s[pos] in "./-"):
            pos += 1
        txt = s[start:pos]
        if not txt:
            fail("missing weight after ':'")
        try:
            w = Fraction(txt)
        except (ValueError, ZeroDivisionError):
            fail(f"bad weight {txt!r}")
        if w < 0:
            fail(f"negative weight {txt}")
        return w

    def parse_subtree() -> _NewickNode:
        nonlocal pos
        skip_ws()
        if pos < len(s) and s[pos] == "(":
            pos += 1
            kids = []
            while True:
                child = parse_subtree()
                skip_ws()
                if pos >= len(s) or s[pos] != ":":
                    fail("every branch needs ':weight'")
                pos += 1
                kids.append((child, parse_weight()))
                skip_ws()
                if pos < len(s) and s[pos] == ",":
                    pos += 1
                    continue
                if pos < len(s) and s[pos] == ")":
                    pos += 1
                    break
                fail("expected ',' or ')'")
            return _NewickNode(parse_name(), kids)
        name = parse_name()
        if not name:
            fail("expected a node")
        return _NewickNode(name, [])

    skip_ws()
    root = parse_subtree()
    skip_ws()
    if pos >= len(s) or s[pos] != ";":
        fail("expected ';'")
    pos += 1
    skip_ws()
    if pos != len(s):
        fail("trailing characters after ';'")
    return root


def _newick_edges(root: _NewickNode) -> list[tuple[str, str, Fraction]]:
    names = set()

    def collect(node: _NewickNode):
        if node.name:
            names.add(node.name)
        for child, _ in node.children:
            collect(child)

    collect(root)
    prefix = "_i"
    while any(nm.startswith(prefix) for nm in names):
        prefix += "i"
    counter = 0
    edges: list[tuple[str, str, Fraction]] = []

    def visit(node: _NewickNode) -> str:
        nonlocal counter
        if node.name:
            nid = node.name
        else:
            nid = f"{prefix}{counter}"
            counter += 1
        for child, w in node.children:
            edges.append((nid, visit(child), w))
        return nid

    visit(root)
    return edges


def parse_tree(text: str,
               leaves: Mapping[str, str] | None = None) -> WeightedTree:
    """Newick text to a tree.  Without an explicit node-to-label map,
    every degree-1 node is labeled with its own name."""
    edges = _newick_edges(_parse_newick(text.strip()))
    return WeightedTree(edges, leaves)


def emit_tree(tree: WeightedTree) -> str:
    """Deterministic newick carrying every node name and exact weights,
    so `parse_tree(emit_tree(t), t.label_map())` rebuilds ``t`` itself."""
    nodes = tree.nodes
    for n in nodes:
        if any(ch in "():,;" or ch.isspace() for ch in n):
            raise ValueError(f"node name {n!r} cannot appear in newick text")
    if len(nodes) == 2:
        a, b = nodes
        return f"({a}:{tree.neighbors(a)[b]}){b};"
    root = min(n for n in nodes if tree.degree(n) >= 2)

    def serialize(node: str, parent: str | None) -> str:
        kids = [(c, w) for c, w in sorted(tree.neighbors(node).items())
                if c != parent]
        if not kids:
            return node
        inner = ",".join(f"{serialize(c, node)}:{w}" for c, w in kids)
        return f"({inner}){node}"

    return serialize(root, None) + ";"


# ----- JSON bundle documents ----------------------------------------------


def _tree_doc(tree: WeightedTree) -> dict:
    return {"newick": emit_tree(tree),
            "leaves": dict(sorted(tree.label_map().items()))}


def _tree_from_doc(doc: dict) -> WeightedTree:
    return parse_tree(doc["newick"], doc["leaves"])


def _interval_doc(iv: Interval) -> list[str]:
    return [str(iv.lo), str(iv.hi)]


def _interval_from_doc(doc) -> Interval:
    lo, hi = doc
    return Interval(Fraction(lo), Fraction(hi))


def rep_to_bundle(rep: Representation, provenance: str = "",
                  check_against: SimpleGraph | None = None) -> dict:
    """Serializable document for a representation.

    ``verification`` reads "checked" only when the caller supplies the
    intended graph and the representation evaluates to it; a mismatch
    is a construction bug and raises instead of emitting a bad bundle.
    """
    verification = "unchecked"
    if check_against is not None:
        if evaluate(rep) != check_against:
            raise RuntimeError("bundle does not evaluate to the stated graph")
        verification = "checked"
    return {
        "kind": "representation",
        "variant": rep.variant.value,
        "trees": [_tree_doc(t) for t in rep.trees],
        "intervals": [_interval_doc(i) for i in rep.intervals],
        "provenance": provenance,
        "verification": verification,
    }


def rep_from_bundle(doc: dict) -> Representation:
    if doc.get("kind") != "representation":
        raise ValueError("not a representation bundle")
    return Representation(Variant(doc["variant"]),
                          tuple(_tree_from_doc(t) for t in doc["trees"]),
                          tuple(_interval_from_doc(i) for i in doc["intervals"]))


def graph_to_doc(g: SimpleGraph) -> dict:
    return {"kind": "graph", "vertices": list(g.vertices),
            "edges": [list(e) for e in g.sorted_edges()]}


def graph_from_doc(doc: dict) -> SimpleGraph:
    if doc.get("kind") != "graph":
        raise ValueError("not a graph document")
    return SimpleGraph(doc["vertices"], [tuple(e) for e in doc["edges"]])


def cover_to_bundle(cover: EdgeCover, cert: CoverCertificate,
                    provenance: str = "") -> dict:
    return {
        "kind": "cover",
        "parts": [graph_to_doc(p) for p in cover.parts],
        "part_kinds": list(cover.kinds),
        "part_reps": [None if r is None else rep_to_bundle(r)
                      for r in cover.part_reps],
        "certificate": {"ok": cert.ok, "parts": cert.parts,
                        "reason": cert.reason},
        "provenance": provenance,
    }


def cover_from_bundle(doc: dict) -> EdgeCover:
    if doc.get("kind") != "cover":
        raise ValueError("not a cover bundle")
    parts = [graph_from_doc(p) for p in doc["parts"]]
    reps = [None if r is None else rep_from_bundle(r)
            for r in doc["part_reps"]]
    return edge_cover(parts, doc["part_kinds"], reps)
