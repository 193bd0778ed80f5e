"""Intersection-style witnesses built from interval-graph factors.

An intersection witness presents a graph as the common edges of a few
supergraphs, each certified by a single-interval tree.  Interval graphs
are the workhorse: this module decides interval-graph membership
exactly (with a hole or asteroidal-triple witness on rejection), turns
interval models into caterpillar representations, realizes the
pair-peeling bound of floor(n/2) interval factors for arbitrary
graphs, evaluates the degree-based factor-count bound, and produces
two-factor witnesses for maximal counterexamples by re-adding their
two smallest missing edges.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Mapping

from .covers import CoverCertificate, ResourceBudgetError
from .graphs import SimpleGraph
from .recognizer import RecognitionResult, recognize, trivial_rep
from .representations import Interval, Representation, and_pcg, evaluate, pcg
from .trees import WeightedTree
from .witness import chordless_cycles

log = logging.getLogger(__name__)


# ----- interval models ----------------------------------------------------


@dataclass(frozen=True)
class IntervalModel:
    """Closed rational interval per vertex; edges are intersections."""

    intervals: Mapping[str, tuple[Fraction, Fraction]]

    def __post_init__(self) -> None:
        for v, (lo, hi) in self.intervals.items():
            if hi < lo:
                raise ValueError(f"interval for {v!r} is empty: [{lo}, {hi}]")

    @property
    def vertices(self) -> tuple[str, ...]:
        return tuple(sorted(self.intervals))

    def intersection_graph(self) -> SimpleGraph:
        vs = self.vertices
        es = []
        for u, v in combinations(vs, 2):
            alo, ahi = self.intervals[u]
            blo, bhi = self.intervals[v]
            if max(alo, blo) <= min(ahi, bhi):
                es.append((u, v))
        return SimpleGraph(vs, es)


def interval_model(mapping: Mapping[str, tuple]) -> IntervalModel:
    return IntervalModel({v: (Fraction(lo), Fraction(hi))
                          for v, (lo, hi) in mapping.items()})


# ----- interval graph recognition ----------------------------------------


@dataclass(frozen=True)
class IntervalRecognition:
    """Exact accept/reject: a model, or a hole / asteroidal triple."""

    status: str  # "yes" | "no"
    model: IntervalModel | None = None
    hole: tuple[str, ...] = ()
    asteroidal_triple: tuple[str, ...] = ()


def _mcs_elimination(g: SimpleGraph) -> list[str]:
    # Maximum-cardinality search; returned list is a candidate perfect
    # elimination order (valid iff the graph is chordal).
    weight = {v: 0 for v in g.vertices}
    seen: set[str] = set()
    order = []
    for _ in range(g.n):
        v = max(sorted(weight), key=lambda x: weight[x])
        del weight[v]
        seen.add(v)
        order.append(v)
        for w in g.neighbors(v):
            if w not in seen:
                weight[w] += 1
    order.reverse()
    return order


def _peo_cliques(g: SimpleGraph, order: list[str]) -> list[frozenset[str]] | None:
    """Maximal cliques read off a perfect elimination order, or None
    when the order (hence the graph) is not chordal."""
    pos = {v: i for i, v in enumerate(order)}
    raw = []
    for v in order:
        later = [w for w in g.neighbors(v) if pos[w] > pos[v]]
        if later:
            p = min(later, key=pos.get)
            if any(w != p and not g.has_edge(p, w) for w in later):
                return None
        raw.append(frozenset([v, *later]))
    raw.sort(key=len, reverse=True)
    cliques: list[frozenset[str]] = []
    for c in raw:
        if not any(c <= kept for kept in cliques):
            cliques.append(c)
    return cliques


def _consecutive_clique_order(cliques: list[frozenset[str]],
                              ) -> list[frozenset[str]] | None:
    """An ordering where each vertex's cliques are consecutive, if any."""
    ordered = sorted(cliques, key=sorted)
    total = len(ordered)
    count: dict[str, int] = {}
    for c in ordered:
        for x in c:
            count[x] = count.get(x, 0) + 1
    placed = {x: 0 for x in count}
    used = [False] * total
    out: list[frozenset[str]] = []

    def extend(open_run: frozenset[str]) -> bool:
        if len(out) == total:
            return True
        for i in range(total):
            if used[i]:
                continue
            c = ordered[i]
            if not open_run <= c:
                continue
            if any(placed[x] and x not in open_run for x in c):
                continue
            used[i] = True
            out.append(c)
            for x in c:
                placed[x] += 1
            if extend(frozenset(x for x in c if placed[x] < count[x])):
                return True
            for x in c:
                placed[x] -= 1
            out.pop()
            used[i] = False
        return False

    return out if extend(frozenset()) else None


def _asteroidal_triple(g: SimpleGraph) -> tuple[str, str, str] | None:
    def joined_avoiding(s: str, t: str, c: str) -> bool:
        banned = set(g.neighbors(c)) | {c}
        if s in banned or t in banned:
            return False
        queue = deque([s])
        seen = {s}
        while queue:
            x = queue.popleft()
            if x == t:
                return True
            for y in g.neighbors(x):
                if y not in seen and y not in banned:
                    seen.add(y)
                    queue.append(y)
        return False

    for a, b, c in combinations(g.vertices, 3):
        if g.has_edge(a, b) or g.has_edge(a, c) or g.has_edge(b, c):
            continue
        if joined_avoiding(a, b, c) and joined_avoiding(a, c, b) \
                and joined_avoiding(b, c, a):
            return (a, b, c)
    return None


def interval_recognize(g: SimpleGraph) -> IntervalRecognition:
    """Exact interval-graph decision.

    Accepts with a model whose intersection graph equals ``g`` (clique
    positions as endpoints), or rejects with an induced cycle of
    length >= 4, or with three vertices pairwise joined by paths
    avoiding each other's closed neighborhoods.
    """
    cliques = _peo_cliques(g, _mcs_elimination(g))
    if cliques is None:
        hole = next(iter(chordless_cycles(g)))
        return IntervalRecognition("no", hole=hole)
    ordered = _consecutive_clique_order(cliques)
    if ordered is None:
        triple = _asteroidal_triple(g)
        if triple is None:
            raise RuntimeError("no clique order and no asteroidal triple")
        return IntervalRecognition("no", asteroidal_triple=triple)
    first: dict[str, int] = {}
    last: dict[str, int] = {}
    for i, c in enumerate(ordered):
        for x in c:
            first.setdefault(x, i)
            last[x] = i
    model = interval_model({v: (first[v], last[v]) for v in g.vertices})
    if model.intersection_graph() != g:
        raise RuntimeError("interval model failed to re-evaluate")
    return IntervalRecognition("yes", model=model)


# ----- models to caterpillar representations ------------------------------


def interval_to_pcg(model: IntervalModel) -> Representation:
    """A single-interval representation of the model's graph.

    Leaves hang off a spine indexed by sorted interval midpoints; a
    vertex's leaf edge is shortened by its half-length, so two leaves
    sit within 2H exactly when their intervals meet.  The result is
    also a valid distance-at-most witness (interval [0, 2H]).
    """
    items = sorted(model.intervals.items())
    if not items:
        raise ValueError("empty model")
    if len(items) == 1:
        return trivial_rep(items[0][0])
    mid = {v: (lo + hi) / 2 for v, (lo, hi) in items}
    half = {v: (hi - lo) / 2 for v, (lo, hi) in items}
    reach = max(half.values()) + 1
    prefix = "_s"
    while any(v.startswith(prefix) for v, _ in items):
        prefix += "s"
    positions = sorted(set(mid.values()))
    name = {p: f"{prefix}{i}" for i, p in enumerate(positions)}
    edges = [(name[a], name[b], b - a)
             for a, b in zip(positions, positions[1:])]
    edges += [(name[mid[v]], v, reach - half[v]) for v, _ in items]
    tree = WeightedTree(edges, {v: v for v, _ in items})
    rep = pcg(tree, Interval(0, 2 * reach))
    if evaluate(rep) != model.intersection_graph():
        raise RuntimeError("caterpillar construction failed to re-evaluate")
    return rep


# ----- pair-peeling intersection cover ------------------------------------


def _pair_factor(g: SimpleGraph, x: str, y: str) -> SimpleGraph:
    # Complete graph minus the non-edges incident to the chosen pair.
    es = [(a, b) for a, b in combinations(g.vertices, 2)
          if g.has_edge(a, b) or (x not in (a, b) and y not in (a, b))]
    return SimpleGraph(g.vertices, es)


def roberts_and_cover(g: SimpleGraph) -> Representation:
    """Intersection witness with exactly floor(n/2) interval factors.

    Rounds peel the lexicographically smallest currently non-adjacent
    vertex pair; that round's factor keeps the pair's true adjacencies
    and fills every other pair, which is always an interval graph.
    Once the remaining vertices form a clique (their missing edges all
    handled earlier), the rounds emit complete factors.  Every factor
    passes interval recognition or construction aborts.
    """
    if g.n < 2:
        raise ValueError("need at least two vertices")
    remaining = list(g.vertices)
    parts: list[tuple[WeightedTree, Interval]] = []
    while len(remaining) >= 2:
        pair = next(((u, v) for u, v in combinations(remaining, 2)
                     if not g.has_edge(u, v)), None)
        if pair is None:
            factor = SimpleGraph(g.vertices,
                                 list(combinations(g.vertices, 2)))
            drop = (remaining[0], remaining[1])
        else:
            factor = _pair_factor(g, *pair)
            drop = pair
        res = interval_recognize(factor)
        if res.status != "yes":
            raise RuntimeError("pair factor is not an interval graph")
        rep = interval_to_pcg(res.model)
        parts.append((rep.tree, rep.interval))
        remaining = [v for v in remaining if v not in drop]
    cover = and_pcg(parts)
    cert = verify_and_cover(g, cover)
    if not cert.ok:
        raise RuntimeError(f"factor intersection differs from input: {cert.reason}")
    return cover


def and_bound(n: int, delta: int, Delta: int) -> int:
    """min(floor(n/2), ceil((3(n - delta) - 1) / 5)) interval factors.

    A third asymptotic term of order Delta * log^(1+o(1)) Delta exists
    but has no computable constant, so it is only logged as a note.
    """
    if not 0 <= delta <= Delta <= n - 1:
        raise ValueError(f"inconsistent degrees: n={n}, delta={delta}, "
                         f"Delta={Delta}")
    value = min(n // 2, -((3 * (n - delta) - 1) // -5))
    log.info("factor-count bound %d; an asymptotic Delta*log^(1+o(1))Delta "
             "term (Delta=%d) is not evaluated", value, Delta)
    return value


# ----- maximal counterexamples and their two-factor witnesses -------------

Oracle = Callable[[SimpleGraph], RecognitionResult]


def _default_oracle(h: SimpleGraph) -> RecognitionResult:
    return recognize(h, 1)


def _with_edge(g: SimpleGraph, e: tuple[str, str]) -> SimpleGraph:
    return SimpleGraph(g.vertices, [*g.edges, e])


def maximalize_non_pcg(g: SimpleGraph,
                       oracle: Oracle | None = None) -> SimpleGraph:
    """Grow a certified counterexample until every missing edge helps.

    Repeatedly adds the smallest missing edge whose addition the oracle
    still rejects; the fixed point is a graph that is itself rejected
    while every single-edge extension is accepted.
    """
    oracle = oracle or _default_oracle
    res = oracle(g)
    if res.status == "yes":
        raise ValueError("input graph already has a representation")
    if res.status != "no":
        raise ResourceBudgetError(f"oracle gave up on the input: {res.reason}")
    grew = True
    while grew:
        grew = False
        for e in sorted(g.non_edges()):
            res = oracle(_with_edge(g, e))
            if res.status == "no":
                g = _with_edge(g, e)
                grew = True
                break
            if res.status != "yes":
                raise ResourceBudgetError(
                    f"oracle gave up on an edge addition: {res.reason}")
    return g


def maximal_and2_witness(g: SimpleGraph,
                         oracle: Oracle | None = None) -> Representation:
    """Two-factor intersection witness for a maximal counterexample.

    Adds the two lexicographically smallest missing edges separately;
    maximality makes both supergraphs representable, and their edge
    sets meet in exactly E(g).  Maximality itself is the caller's
    responsibility (asserting it costs a full oracle sweep).
    """
    oracle = oracle or _default_oracle
    missing = sorted(g.non_edges())
    if len(missing) < 2:
        raise ValueError("input has fewer than 2 missing edges; a maximal "
                         "counterexample always has at least 2")
    parts = []
    for e in missing[:2]:
        res = oracle(_with_edge(g, e))
        if res.status == "no":
            raise ValueError(f"adding {e} keeps the graph unrepresentable; "
                             "input is not maximal")
        if res.status != "yes":
            raise ResourceBudgetError(
                f"oracle gave up on an edge addition: {res.reason}")
        parts.append((res.representation.tree, res.representation.interval))
    witness = and_pcg(parts)
    cert = verify_and_cover(g, witness)
    if not cert.ok:
        raise RuntimeError(f"two-factor witness failed its check: {cert.reason}")
    return witness


def verify_and_cover(g: SimpleGraph, rep: Representation) -> CoverCertificate:
    """Accept iff the representation evaluates to exactly ``g``;
    reject names the first vertex pair that differs."""
    total = len(rep.trees)
    if sorted(rep.labels) != list(g.vertices):
        return CoverCertificate(False, total, "label set differs from the graph")
    got = evaluate(rep)
    for a, b in g.vertex_pairs():
        mine, theirs = g.has_edge(a, b), got.has_edge(a, b)
        if mine != theirs:
            what = "missing from" if mine else "extra in"
            return CoverCertificate(False, total,
                                    f"pair ({a}, {b}) {what} the evaluation")
    return CoverCertificate(True, total, "")
