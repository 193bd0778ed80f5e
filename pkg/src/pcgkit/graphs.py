"""Immutable simple graphs over string-labeled vertices.

Vertices are arbitrary strings ordered lexicographically; edges are
unordered pairs of distinct vertices.  All derived objects (complements,
unions, subgraphs) are new graphs; nothing mutates in place.
"""

from __future__ import annotations

from typing import Iterable, Iterator


def _norm_edge(u: str, v: str) -> tuple[str, str]:
    if u == v:
        raise ValueError(f"self-loop at {u!r}")
    return (u, v) if u < v else (v, u)


class SimpleGraph:
    """Undirected simple graph with deterministic vertex order."""

    __slots__ = ("_vertices", "_edges", "_adj")

    def __init__(self, vertices: Iterable[str], edges: Iterable[tuple[str, str]] = ()):
        vs = tuple(sorted(set(str(v) for v in vertices)))
        vset = set(vs)
        es = set()
        for u, v in edges:
            u, v = str(u), str(v)
            if u not in vset or v not in vset:
                raise ValueError(f"edge ({u!r}, {v!r}) uses an unknown vertex")
            es.add(_norm_edge(u, v))
        self._vertices = vs
        self._edges = frozenset(es)
        adj: dict[str, set[str]] = {v: set() for v in vs}
        for u, v in es:
            adj[u].add(v)
            adj[v].add(u)
        self._adj = {v: frozenset(ns) for v, ns in adj.items()}

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> frozenset[tuple[str, str]]:
        return self._edges

    def sorted_edges(self) -> list[tuple[str, str]]:
        return sorted(self._edges)

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._edges)

    def has_edge(self, u: str, v: str) -> bool:
        if u == v:
            return False
        return _norm_edge(u, v) in self._edges

    def neighbors(self, v: str) -> frozenset[str]:
        return self._adj[v]

    def degree(self, v: str) -> int:
        return len(self._adj[v])

    def min_degree(self) -> int:
        return min((len(self._adj[v]) for v in self._vertices), default=0)

    def max_degree(self) -> int:
        return max((len(self._adj[v]) for v in self._vertices), default=0)

    def vertex_pairs(self) -> Iterator[tuple[str, str]]:
        vs = self._vertices
        for i in range(len(vs)):
            for j in range(i + 1, len(vs)):
                yield (vs[i], vs[j])

    def non_edges(self) -> list[tuple[str, str]]:
        return [p for p in self.vertex_pairs() if p not in self._edges]

    def complement(self) -> "SimpleGraph":
        return SimpleGraph(self._vertices, self.non_edges())

    def union(self, other: "SimpleGraph") -> "SimpleGraph":
        if self._vertices != other._vertices:
            raise ValueError("union requires identical vertex sets")
        return SimpleGraph(self._vertices, self._edges | other._edges)

    def intersection(self, other: "SimpleGraph") -> "SimpleGraph":
        if self._vertices != other._vertices:
            raise ValueError("intersection requires identical vertex sets")
        return SimpleGraph(self._vertices, self._edges & other._edges)

    def induced_subgraph(self, keep: Iterable[str]) -> "SimpleGraph":
        ks = set(keep)
        unknown = ks - set(self._vertices)
        if unknown:
            raise ValueError(f"unknown vertices: {sorted(unknown)}")
        es = [e for e in self._edges if e[0] in ks and e[1] in ks]
        return SimpleGraph(ks, es)

    def edge_subgraph(self, edges: Iterable[tuple[str, str]]) -> "SimpleGraph":
        """Subgraph on the endpoints of the given edges (all must exist)."""
        es = [_norm_edge(u, v) for u, v in edges]
        for e in es:
            if e not in self._edges:
                raise ValueError(f"edge {e} not in graph")
        vs = set()
        for u, v in es:
            vs.add(u)
            vs.add(v)
        return SimpleGraph(vs, es)

    def components(self) -> list[tuple[str, ...]]:
        seen: set[str] = set()
        comps = []
        for s in self._vertices:
            if s in seen:
                continue
            comp = []
            stack = [s]
            seen.add(s)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self._adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            comps.append(tuple(sorted(comp)))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def has_cycle(self) -> bool:
        parent = {v: v for v in self._vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self._edges:
            ru, rv = find(u), find(v)
            if ru == rv:
                return True
            parent[ru] = rv
        return False

    def is_forest(self) -> bool:
        return not self.has_cycle()

    def is_linear_forest(self) -> bool:
        """Vertex-disjoint union of paths: acyclic with max degree 2."""
        return self.max_degree() <= 2 and not self.has_cycle()

    def bipartition(self) -> tuple[tuple[str, ...], tuple[str, ...]] | None:
        """A 2-coloring (sorted sides) if bipartite, else None."""
        color: dict[str, int] = {}
        for s in self._vertices:
            if s in color:
                continue
            color[s] = 0
            queue = [s]
            while queue:
                x = queue.pop()
                for y in self._adj[x]:
                    if y not in color:
                        color[y] = 1 - color[x]
                        queue.append(y)
                    elif color[y] == color[x]:
                        return None
        left = tuple(sorted(v for v in self._vertices if color[v] == 0))
        right = tuple(sorted(v for v in self._vertices if color[v] == 1))
        return left, right

    def is_regular(self) -> int | None:
        """The common degree if regular (and nonempty), else None."""
        degs = {len(self._adj[v]) for v in self._vertices}
        if len(degs) == 1:
            return degs.pop()
        return None

    def relabel(self, mapping: dict[str, str]) -> "SimpleGraph":
        if sorted(mapping) != list(self._vertices):
            raise ValueError("mapping must cover exactly the vertex set")
        if len(set(mapping.values())) != len(mapping):
            raise ValueError("mapping is not injective")
        return SimpleGraph(mapping.values(),
                           [(mapping[u], mapping[v]) for u, v in self._edges])

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimpleGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertices, self._edges))

    def __repr__(self) -> str:
        return f"SimpleGraph({self.n} vertices, {self.m} edges)"


def vertex_labels(n: int, prefix: str = "v") -> list[str]:
    """n labels whose lexicographic order matches their numeric order."""
    width = len(str(n - 1)) if n > 1 else 1
    return [f"{prefix}{i:0{width}d}" for i in range(n)]


def complete_graph(labels: Iterable[str]) -> SimpleGraph:
    vs = sorted(set(labels))
    return SimpleGraph(vs, [(u, v) for i, u in enumerate(vs) for v in vs[i + 1:]])


def empty_graph(labels: Iterable[str]) -> SimpleGraph:
    return SimpleGraph(labels)


def path_graph(labels: list[str]) -> SimpleGraph:
    return SimpleGraph(labels, list(zip(labels, labels[1:])))


def cycle_graph(labels: list[str]) -> SimpleGraph:
    if len(labels) < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    edges = list(zip(labels, labels[1:])) + [(labels[-1], labels[0])]
    return SimpleGraph(labels, edges)


def complete_bipartite(left: list[str], right: list[str]) -> SimpleGraph:
    return SimpleGraph(list(left) + list(right),
                       [(u, v) for u in left for v in right])


def disjoint_union(graphs: Iterable[SimpleGraph]) -> SimpleGraph:
    vs: list[str] = []
    es: list[tuple[str, str]] = []
    for g in graphs:
        overlap = set(vs) & set(g.vertices)
        if overlap:
            raise ValueError(f"vertex sets overlap: {sorted(overlap)}")
        vs.extend(g.vertices)
        es.extend(g.edges)
    return SimpleGraph(vs, es)


def automorphisms(g: SimpleGraph) -> list[dict[str, str]]:
    """All adjacency-preserving vertex bijections, by backtracking.

    Intended for small graphs (the recognizer's scale); candidates are
    pruned by degree and by adjacency with already-mapped vertices.
    """
    vs = list(g.vertices)
    n = len(vs)
    deg = {v: g.degree(v) for v in vs}
    perms: list[dict[str, str]] = []
    image: dict[str, str] = {}
    used: set[str] = set()

    def extend(i: int) -> None:
        if i == n:
            perms.append(dict(image))
            return
        u = vs[i]
        for w in vs:
            if w in used or deg[w] != deg[u]:
                continue
            ok = True
            for prev in vs[:i]:
                if g.has_edge(u, prev) != g.has_edge(w, image[prev]):
                    ok = False
                    break
            if ok:
                image[u] = w
                used.add(w)
                extend(i + 1)
                used.remove(w)
                del image[u]

    extend(0)
    return perms


def canonical_form(g: SimpleGraph) -> tuple:
    """Isomorphism-invariant key: minimal edge set over all relabelings.

    Exponential; fine for the at-most-9-vertex graphs it is used on.
    """
    from itertools import permutations

    return canonical_labeling(g)[0]


def canonical_labeling(g: SimpleGraph) -> tuple[tuple, dict[str, int]]:
    """canonical_form plus one vertex -> index map achieving it."""
    from itertools import permutations

    vs = g.vertices
    n = len(vs)
    idx = {v: i for i, v in enumerate(vs)}
    base = [(idx[u], idx[v]) for u, v in g.edges]
    best = None
    best_perm = tuple(range(n))
    for perm in permutations(range(n)):
        relab = sorted(tuple(sorted((perm[a], perm[b]))) for a, b in base)
        key = tuple(relab)
        if best is None or key < best:
            best = key
            best_perm = perm
    return (n, best), {v: best_perm[idx[v]] for v in vs}
