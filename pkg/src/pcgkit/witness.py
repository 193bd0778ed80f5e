"""Counterexample families and non-membership certificates.

Generators for the nested-pair gadget G_k, the bipartite host H_k whose
subset side realizes every (2k-1)-subset, the triple-K44 graph and its
complement, and the 8-vertex graph whose complement is two disjoint
4-cycles.  Alongside them, the machine-checkable evidence: an
interval-count lower bound read off a nonincreasing distance chain, a
disjoint-chordless-cycles witness of non-membership, and the exhaustive
two-coloring sweep behind the not-an-intersection-of-two result.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction

from .graphs import (SimpleGraph, canonical_form, complete_bipartite,
                     cycle_graph, disjoint_union)
from .trees import WeightedTree, longest_pair_holds


def _pair_labels(k: int) -> tuple[list[str], list[str]]:
    # u1..u_{2k-2}, v1..v_{2k-2}, zero-padded so lexicographic = numeric
    m = 2 * k - 2
    w = len(str(m))
    u = [f"u{i:0{w}d}" for i in range(1, m + 1)]
    v = [f"v{i:0{w}d}" for i in range(1, m + 1)]
    return u, v


def gen_Gk(k: int) -> SimpleGraph:
    """Nested-pair gadget: vertices x, y, u1..u_{2k-2}, v1..v_{2k-2};
    edges (x,y) plus (x,u_i), (x,v_i) for every odd i.

    4k-2 vertices, 2k-1 edges, 2k-1 connected components.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    u, v = _pair_labels(k)
    edges = [("x", "y")]
    for i in range(1, 2 * k - 1, 2):
        edges.append(("x", u[i - 1]))
        edges.append(("x", v[i - 1]))
    return SimpleGraph(["x", "y", *u, *v], edges)


@dataclass(frozen=True)
class GkEmbedding:
    """Labels of an induced copy of gen_Gk(k) inside a host graph.

    ``u`` and ``v`` list the pair labels in nesting order, innermost
    level last; both have length 2k-2.
    """

    x: str
    y: str
    u: tuple[str, ...]
    v: tuple[str, ...]

    def __post_init__(self):
        if len(self.u) != len(self.v) or len(self.u) < 2 or len(self.u) % 2:
            raise ValueError("u and v must list the 2k-2 pair labels, k >= 2")
        labels = self.labels()
        if len(set(labels)) != len(labels):
            raise ValueError("embedding labels must be distinct")

    @property
    def k(self) -> int:
        return len(self.u) // 2 + 1

    def labels(self) -> tuple[str, ...]:
        return (self.x, self.y, *self.u, *self.v)

    def pattern(self) -> SimpleGraph:
        """The graph this embedding must induce in its host."""
        edges = [(self.x, self.y)]
        for i in range(0, len(self.u), 2):  # odd 1-based levels
            edges.append((self.x, self.u[i]))
            edges.append((self.x, self.v[i]))
        return SimpleGraph(self.labels(), edges)

    def induces_in(self, g: SimpleGraph) -> bool:
        return g.induced_subgraph(self.labels()) == self.pattern()


def gk_embedding(k: int) -> GkEmbedding:
    """The identity embedding of gen_Gk(k) into itself."""
    u, v = _pair_labels(k)
    return GkEmbedding("x", "y", tuple(u), tuple(v))


def _hk_fixed_side(k: int) -> list[str]:
    # y, u1, v1, u2, v2, ... : the 4k-3 vertices every subset draws from
    u, v = _pair_labels(k)
    out = ["y"]
    for ui, vi in zip(u, v):
        out.extend((ui, vi))
    return out


def _colex_subsets(n: int, r: int) -> list[tuple[int, ...]]:
    return sorted(itertools.combinations(range(n), r), key=lambda s: s[::-1])


def _subset_label(idx: int, total: int) -> str:
    return f"s{idx:0{len(str(total - 1))}d}"


def gen_Hk(k: int) -> SimpleGraph:
    """Bipartite host: a fixed side of 4k-3 vertices and a subset side
    holding one vertex per (2k-1)-subset of the fixed side, joined to
    exactly that subset.  Subset vertices appear in colexicographic
    order of their subsets.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    fixed = _hk_fixed_side(k)
    subsets = _colex_subsets(4 * k - 3, 2 * k - 1)
    vertices = list(fixed)
    edges = []
    for idx, sub in enumerate(subsets):
        s = _subset_label(idx, len(subsets))
        vertices.append(s)
        edges.extend((s, fixed[j]) for j in sub)
    return SimpleGraph(vertices, edges)


def hk_gk_embedding(k: int) -> GkEmbedding:
    """The subset vertex of gen_Hk(k) whose neighborhood is y plus the
    odd-level pairs; together with the fixed side it induces gen_Gk(k).
    """
    u, v = _pair_labels(k)
    fixed = _hk_fixed_side(k)
    pos = {lab: j for j, lab in enumerate(fixed)}
    want = {"y"}
    for i in range(1, 2 * k - 1, 2):
        want.add(u[i - 1])
        want.add(v[i - 1])
    target = tuple(sorted(pos[lab] for lab in want))
    subsets = _colex_subsets(4 * k - 3, 2 * k - 1)
    x = _subset_label(subsets.index(target), len(subsets))
    return GkEmbedding(x, "y", tuple(u), tuple(v))


def gen_three_K44() -> SimpleGraph:
    """Three disjoint copies of K_{4,4}: 24 vertices, 48 edges."""
    copies = []
    for c in range(3):
        left = [f"a{c}{i}" for i in range(4)]
        right = [f"b{c}{i}" for i in range(4)]
        copies.append(complete_bipartite(left, right))
    return disjoint_union(copies)


def gen_Hbar() -> SimpleGraph:
    """Complement of gen_three_K44: 24 vertices, 228 edges, connected."""
    return gen_three_K44().complement()


def gen_fig1() -> SimpleGraph:
    """Complement of two disjoint 4-cycles: 8 vertices, 5-regular."""
    c1 = cycle_graph([f"p{i}" for i in range(4)])
    c2 = cycle_graph([f"q{i}" for i in range(4)])
    return disjoint_union([c1, c2]).complement()


# ---------------------------------------------------------------------------
# interval-count lower bound


class HypothesisViolation(ValueError):
    """The longest-pair hypothesis fails at nesting level ``index``."""

    def __init__(self, index: int, message: str):
        super().__init__(message)
        self.index = index


@dataclass(frozen=True)
class LowerBoundCertificate:
    tree: WeightedTree
    embedding: GkEmbedding
    chain: tuple[Fraction, ...]
    bound: int


def _chain_bound(in_interval: list[bool]) -> int:
    # 1 + number of out-blocks wedged strictly between in-values
    blocks = 0
    seen_in = False
    pending_out = False
    for flag in in_interval:
        if flag:
            if seen_in and pending_out:
                blocks += 1
            seen_in = True
            pending_out = False
        elif seen_in:
            pending_out = True
    return blocks + 1


def check_lower_bound(tree: WeightedTree, emb: GkEmbedding,
                      k: int | None = None) -> LowerBoundCertificate:
    """Certify that any single-tree multi-interval representation whose
    tree is ``tree`` uses at least k intervals, given an induced
    nested-pair gadget on the embedding's labels.

    For each nesting level i, the pair (u_i, v_i) must realize the
    longest leaf distance within the shrinking window
    {u_i, ..., u_{2k-2}, y, v_{2k-2}, ..., v_i}.  The values
    d_i = max(d(x,u_i), d(x,v_i)) then form a nonincreasing chain that
    alternates between edge pairs (odd levels, plus the final (x,y))
    and non-edge pairs; every non-edge value wedged between two edge
    values forces a fresh interval.
    """
    if k is None:
        k = emb.k
    if k != emb.k:
        raise ValueError(f"embedding encodes k={emb.k}, got k={k}")
    leaves = set(tree.labels)
    missing = [lab for lab in emb.labels() if lab not in leaves]
    if missing:
        raise ValueError(f"embedding labels are not leaves of the tree: {missing}")

    m = 2 * k - 2
    u, v = emb.u, emb.v
    for i in range(1, m + 1):
        window = [*u[i - 1:], emb.y, *v[i - 1:]]
        if not longest_pair_holds(tree, window, u[i - 1], v[i - 1]):
            raise HypothesisViolation(
                i, f"(u_{i}, v_{i}) is not a longest pair in its window")

    chain = [max(tree.distance(emb.x, u[i]), tree.distance(emb.x, v[i]))
             for i in range(m)]
    chain.append(tree.distance(emb.x, emb.y))
    for i in range(m):
        # implied by the window checks; confirmed anyway
        if chain[i] < chain[i + 1]:
            raise HypothesisViolation(
                i + 1, f"distance chain increases after position {i + 1}")

    in_interval = [(i % 2 == 1) for i in range(1, m + 1)] + [True]
    return LowerBoundCertificate(tree, emb, tuple(chain),
                                 _chain_bound(in_interval))


# ---------------------------------------------------------------------------
# disjoint chordless cycles


@dataclass(frozen=True)
class DisjointCyclesCertificate:
    """Two vertex-disjoint induced cycles of length >= 4 with no edge
    between them, in the stated graph."""

    graph: SimpleGraph
    cycle_a: tuple[str, ...]
    cycle_b: tuple[str, ...]


def _check_induced_cycle(g: SimpleGraph, cyc: tuple[str, ...]) -> None:
    n = len(cyc)
    if n < 4:
        raise ValueError(f"cycle {cyc} is shorter than 4")
    if len(set(cyc)) != n:
        raise ValueError(f"cycle {cyc} repeats a vertex")
    for i in range(n):
        for j in range(i + 1, n):
            consecutive = j - i == 1 or (i == 0 and j == n - 1)
            if g.has_edge(cyc[i], cyc[j]) != consecutive:
                what = "missing edge" if consecutive else "chord"
                raise ValueError(f"{what} {{{cyc[i]}, {cyc[j]}}} in cycle {cyc}")


def verify_disjoint_cycles_certificate(cert: DisjointCyclesCertificate) -> None:
    """Raise ValueError unless both cycles are induced, disjoint, and
    joined by no edge."""
    g = cert.graph
    _check_induced_cycle(g, cert.cycle_a)
    _check_induced_cycle(g, cert.cycle_b)
    shared = set(cert.cycle_a) & set(cert.cycle_b)
    if shared:
        raise ValueError(f"cycles share vertices: {sorted(shared)}")
    for p in cert.cycle_a:
        for q in cert.cycle_b:
            if g.has_edge(p, q):
                raise ValueError(f"edge {{{p}, {q}}} connects the cycles")


@dataclass(frozen=True)
class CycleSearchResult:
    status: str  # "found" | "none" | "budget"
    certificate: DisjointCyclesCertificate | None
    nodes: int


class _BudgetExceeded(Exception):
    pass


def _chordless_cycles(g: SimpleGraph, tick):
    """Yield each induced cycle of length >= 4 exactly once.

    Cycles are grown from their minimum vertex; a candidate may touch
    the path only at its last vertex, except that adjacency to the
    start closes the cycle (and forbids further growth, since that
    edge would persist as a chord).
    """
    verts = sorted(g.vertices)
    idx = {p: i for i, p in enumerate(verts)}
    adj = {p: g.neighbors(p) for p in verts}

    def grow(path: list[str], on_path: set[str]):
        tick()
        s, last = path[0], path[-1]
        inner = path[1:-1]
        for w in sorted(adj[last], key=idx.get):
            if idx[w] <= idx[s] or w in on_path:
                continue
            if any(w in adj[p] for p in inner):
                continue
            if w in adj[s]:
                if len(path) >= 3 and idx[path[1]] < idx[w]:
                    yield (*path, w)
                continue
            path.append(w)
            on_path.add(w)
            yield from grow(path, on_path)
            path.pop()
            on_path.remove(w)

    for s in verts:
        for a in sorted(adj[s], key=idx.get):
            if idx[a] > idx[s]:
                yield from grow([s, a], {s, a})


def chordless_cycles(g: SimpleGraph):
    """Every induced cycle of length >= 4, each exactly once."""
    yield from _chordless_cycles(g, lambda: None)


def find_disjoint_chordless_cycles(g: SimpleGraph, max_nodes: int = 2_000_000,
                                   time_limit: float | None = None
                                   ) -> CycleSearchResult:
    """Search for two induced cycles (length >= 4) with no shared vertex
    and no connecting edge.

    The second cycle is sought outside the first cycle's closed
    neighborhood, so any hit is a valid certificate; a "none" verdict
    requires exhausting every candidate first cycle.
    """
    deadline = None if time_limit is None else time.monotonic() + time_limit
    state = {"nodes": 0}

    def tick():
        state["nodes"] += 1
        if state["nodes"] > max_nodes:
            raise _BudgetExceeded
        if (deadline is not None and state["nodes"] % 256 == 0
                and time.monotonic() > deadline):
            raise _BudgetExceeded

    found = None
    try:
        for cyc in _chordless_cycles(g, tick):
            blocked = set(cyc)
            for p in cyc:
                blocked |= g.neighbors(p)
            rest = [p for p in g.vertices if p not in blocked]
            if len(rest) < 4:
                continue
            sub = g.induced_subgraph(rest)
            for other in _chordless_cycles(sub, tick):
                found = DisjointCyclesCertificate(g, cyc, other)
                break
            if found is not None:
                break
    except _BudgetExceeded:
        return CycleSearchResult("budget", None, state["nodes"])
    if found is None:
        return CycleSearchResult("none", None, state["nodes"])
    verify_disjoint_cycles_certificate(found)
    return CycleSearchResult("found", found, state["nodes"])


# ---------------------------------------------------------------------------
# the K_{4,4} coloring sweep and the not-AND-2 report

_K44_LEFT = tuple(range(4))
_K44_RIGHT = tuple(range(4, 8))


def _k44_edge_bit(left: int, right: int) -> int:
    return 1 << (4 * left + (right - 4))


def _k44_cycles() -> list[tuple[int, int, tuple[int, ...]]]:
    """Every cycle of K_{4,4} as (edge_mask, chord_mask, vertices),
    sorted by length; lengths 4, 6, 8 are the only possibilities."""
    seen = {}
    for t in (2, 3, 4):
        for ls in itertools.combinations(_K44_LEFT, t):
            for rs in itertools.combinations(_K44_RIGHT, t):
                for lperm in itertools.permutations(ls[1:]):
                    for rperm in itertools.permutations(rs):
                        seq = [ls[0]]
                        for li, ri in zip((*lperm, None), rperm):
                            seq.append(ri)
                            if li is not None:
                                seq.append(li)
                        mask = 0
                        for a, b in zip(seq, seq[1:] + seq[:1]):
                            l, r = (a, b) if a < 4 else (b, a)
                            mask |= _k44_edge_bit(l, r)
                        if mask in seen:
                            continue
                        chord = 0
                        n = len(seq)
                        for i in range(n):
                            for j in range(i + 2, n):
                                if i == 0 and j == n - 1:
                                    continue
                                a, b = seq[i], seq[j]
                                if (a < 4) != (b < 4):
                                    l, r = (a, b) if a < 4 else (b, a)
                                    chord |= _k44_edge_bit(l, r)
                        seen[mask] = (chord, tuple(seq))
    out = [(m, c, s) for m, (c, s) in seen.items()]
    out.sort(key=lambda row: (len(row[2]), row[2]))
    return out


@dataclass(frozen=True)
class K44ColoringReport:
    """Exhaustive sweep over all 2^16 two-colorings of K_{4,4}'s edges."""

    total_colorings: int
    violations: int          # colorings with no monochromatic chordless cycle
    cyclic_subsets: int      # edge subsets containing a cycle
    forest_subsets: int
    max_forest_edges: int    # must be <= 7: forests on 8 vertices
    chordless_failures: int  # shortest cycles that carried a chord
    shortest_cycle_lengths: tuple[tuple[int, int], ...]  # (length, count)

    @property
    def passed(self) -> bool:
        return (self.violations == 0 and self.chordless_failures == 0
                and self.max_forest_edges <= 7)


def k44_coloring_lemma_exhaustive() -> K44ColoringReport:
    """Check, over all 65536 two-colorings of K_{4,4}'s 16 edges, that
    some color class contains a chordless cycle of length >= 4.

    One sweep over all edge subsets records each subset's shortest
    cycle (none for forests); in a bipartite host the shortest cycle
    of a cyclic subset is chordless, which is verified per subset via
    precomputed chord masks rather than assumed.
    """
    cycles = _k44_cycles()
    full = (1 << 16) - 1
    hit_len = [0] * (full + 1)  # 0 = acyclic
    chordless_failures = 0
    length_counts = {4: 0, 6: 0, 8: 0}
    forest_subsets = 0
    max_forest_edges = 0
    for mask in range(full + 1):
        for emask, chord, seq in cycles:
            if emask & mask == emask:
                hit_len[mask] = len(seq)
                length_counts[len(seq)] += 1
                if chord & mask:
                    chordless_failures += 1
                break
        else:
            forest_subsets += 1
            bits = bin(mask).count("1")
            if bits > max_forest_edges:
                max_forest_edges = bits
    violations = sum(1 for mask in range(full + 1)
                     if hit_len[mask] == 0 and hit_len[full ^ mask] == 0)
    return K44ColoringReport(
        total_colorings=full + 1,
        violations=violations,
        cyclic_subsets=(full + 1) - forest_subsets,
        forest_subsets=forest_subsets,
        max_forest_edges=max_forest_edges,
        chordless_failures=chordless_failures,
        shortest_cycle_lengths=tuple(sorted(length_counts.items())),
    )


@dataclass(frozen=True)
class NotAnd2Report:
    """Machine-checked steps showing the complement of three disjoint
    K_{4,4} copies is not an intersection of two single-interval
    representations.

    Each field is one step: every two-coloring of a K_{4,4} copy holds a
    monochromatic chordless cycle (exhaustive); two colors over three
    copies repeat one (pigeonhole); the copies are the components, so
    cycles in different copies have no connecting edge; and the host is
    bipartite, so augmenting a cycle with leftover edges keeps an
    induced cycle of length >= 4.
    """

    vertices: int
    edges: int
    complement_edges: int
    components_are_k44: bool
    bipartite_ok: bool
    cross_pairs_checked: int
    cross_edges_found: int
    pigeonhole_ok: bool
    coloring: K44ColoringReport

    @property
    def passed(self) -> bool:
        return (self.components_are_k44 and self.bipartite_ok
                and self.cross_edges_found == 0 and self.pigeonhole_ok
                and self.coloring.passed)


def not_and2_certificate(h: SimpleGraph | None = None) -> NotAnd2Report:
    """Assemble the step-by-step report for gen_three_K44 (or a graph
    claimed to share its structure)."""
    if h is None:
        h = gen_three_K44()
    comps = h.components()
    ref = canonical_form(complete_bipartite(
        [f"l{i}" for i in range(4)], [f"r{i}" for i in range(4)]))
    components_are_k44 = len(comps) == 3 and all(
        canonical_form(h.induced_subgraph(c)) == ref for c in comps)
    cross_pairs = 0
    cross_edges = 0
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            for p in comps[i]:
                for q in comps[j]:
                    cross_pairs += 1
                    if h.has_edge(p, q):
                        cross_edges += 1
    pigeonhole_ok = all(
        any(colors[i] == colors[j] for i in range(3) for j in range(i + 1, 3))
        for colors in itertools.product((0, 1), repeat=3))
    return NotAnd2Report(
        vertices=h.n,
        edges=h.m,
        complement_edges=h.complement().m,
        components_are_k44=components_are_k44,
        bipartite_ok=h.bipartition() is not None,
        cross_pairs_checked=cross_pairs,
        cross_edges_found=cross_edges,
        pigeonhole_ok=pigeonhole_ok,
        coloring=k44_coloring_lemma_exhaustive(),
    )
