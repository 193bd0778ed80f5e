"""Exhaustive representation search over leaf-labeled binary topologies.

For n labeled leaves there are (2n-5)!! unrooted binary shapes; every
tree realizing a graph refines to one of them once zero weights are
allowed, so searching shapes is complete.  Per shape, pairs of leaves
are assigned to regions of the candidate interval family (inside
interval j, or in one of the gaps around the intervals) and each
partial assignment is checked for exact rational feasibility; integer
separations between region boundaries make strict membership exact
(any real solution scales to one with unit gaps).

The searcher keeps the last feasible point and first tries, for every
pair, the region that point already satisfies; such assignments commit
without a new solve, which makes witness-bearing shapes cheap.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .graphs import SimpleGraph, automorphisms
from .lp import solve_feasibility
from .representations import Interval, Representation, evaluate, multi, pcg
from .trees import WeightedTree

log = logging.getLogger(__name__)

Topology = tuple[tuple[int, int], ...]


def count_topologies(n: int) -> int:
    """(2n-5)!! for n >= 2."""
    if n < 2:
        raise ValueError("need at least two leaves")
    out = 1
    for j in range(2, n):  # leaf j+1 goes into any of the 2j-3 edges
        out *= 2 * j - 3
    return out


def enumerate_topologies(n: int) -> Iterator[Topology]:
    """All unrooted binary shapes on leaves 0..n-1, one at a time.

    Leaf k is inserted into every edge of every shape on leaves
    0..k-1; internal nodes are numbered n, n+1, ... in insertion
    order.  Each shape appears exactly once.
    """
    if n < 2:
        raise ValueError("need at least two leaves")

    def grow(edges: list[tuple[int, int]], next_leaf: int) -> Iterator[Topology]:
        if next_leaf == n:
            yield tuple(sorted(tuple(sorted(e)) for e in edges))
            return
        mid = n + (next_leaf - 2)
        for i in range(len(edges)):
            a, b = edges[i]
            rest = edges[:i] + edges[i + 1:]
            yield from grow(rest + [(a, mid), (mid, b), (mid, next_leaf)],
                            next_leaf + 1)

    yield from grow([(0, 1)], 2)


def topology_split_key(topo: Topology, n: int) -> tuple[int, ...]:
    """Canonical key: the sorted leaf bipartitions induced by edges.

    A tree is determined by its splits, so equal keys mean equal
    leaf-labeled shapes.
    """
    adj: dict[int, list[int]] = {}
    for a, b in topo:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    full = (1 << n) - 1
    masks = []
    for a, b in topo:
        # leaves on b's side of edge (a, b)
        mask = 0
        stack = [b]
        seen = {a, b}
        while stack:
            x = stack.pop()
            if x < n:
                mask |= 1 << x
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        masks.append(min(mask, full ^ mask))
    return tuple(sorted(masks))


def _perm_mask_tables(perms: list[Sequence[int]], n: int) -> list[list[int]]:
    tables = []
    size = 1 << n
    for p in perms:
        bit = [1 << p[i] for i in range(n)]
        tab = [0] * size
        for m in range(1, size):
            low = m & -m
            tab[m] = tab[m ^ low] | bit[low.bit_length() - 1]
        tables.append(tab)
    return tables


def orbit_filter(topologies: Iterable[Topology], n: int,
                 leaf_perms: list[Sequence[int]]) -> Iterator[Topology]:
    """One representative per orbit of the given leaf permutations.

    A shape survives iff its split key is minimal within its orbit;
    split keys are complete invariants, so exactly one member stays.
    """
    perms = [p for p in leaf_perms if tuple(p) != tuple(range(n))]
    if not perms:
        yield from topologies
        return
    tables = _perm_mask_tables(perms, n)
    full = (1 << n) - 1
    for topo in topologies:
        key = topology_split_key(topo, n)
        minimal = True
        for tab in tables:
            mapped = tuple(sorted(min(tab[m], full ^ tab[m]) for m in key))
            if mapped < key:
                minimal = False
                break
        if minimal:
            yield topo
    return


def leaf_permutations(g: SimpleGraph) -> list[tuple[int, ...]]:
    """Graph automorphisms as permutations of sorted-vertex indices."""
    idx = {v: i for i, v in enumerate(g.vertices)}
    return [tuple(idx[sigma[v]] for v in g.vertices) for sigma in automorphisms(g)]


# ----- per-topology assignment search ----------------------------------


@dataclass
class SearchBudget:
    """Resource limits for the exhaustive search."""

    max_n: int | None = None  # None: 9 for single-interval, 7 beyond
    max_topologies: int | None = None
    max_nodes: int | None = None
    time_limit: float | None = None
    node_cap_per_topology: int | None = 5000
    jobs: int = 1

    def resolved_max_n(self, k: int) -> int:
        if self.max_n is not None:
            return self.max_n
        return 9 if k == 1 else 7


@dataclass
class SearchStats:
    topologies: int = 0
    nodes: int = 0
    lp_solves: int = 0

    def merge(self, other: "SearchStats") -> None:
        self.topologies += other.topologies
        self.nodes += other.nodes
        self.lp_solves += other.lp_solves


@dataclass
class SearchOutcome:
    status: str  # "yes" | "exhausted" | "budget"
    witness: Representation | None = None
    stats: SearchStats = field(default_factory=SearchStats)
    reason: str = ""


class _TopologySearch:
    """Region-assignment DFS with LP pruning on one fixed shape."""

    def __init__(self, n: int, k: int, edge_pairs: frozenset[tuple[int, int]],
                 topo: Topology, deadline: float | None):
        self.n = n
        self.k = k
        self.topo = topo
        self.deadline = deadline
        self.num_edges = len(topo)
        self.num_vars = self.num_edges + 2 * k
        self.edge_index = {e: i for i, e in enumerate(topo)}
        adj: dict[int, list[int]] = {}
        for a, b in topo:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        # edge-index path for every leaf pair
        self.paths: dict[tuple[int, int], list[int]] = {}
        for s in range(n):
            prev = {s: -1}
            order = [s]
            stack = [s]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in prev:
                        prev[y] = x
                        order.append(y)
                        stack.append(y)
            for t in range(s + 1, n):
                path = []
                x = t
                while x != s:
                    e = (x, prev[x]) if x < prev[x] else (prev[x], x)
                    path.append(self.edge_index[e])
                    x = prev[x]
                self.paths[(s, t)] = path

        pairs = sorted(self.paths)
        deg = [0] * n
        for a, b in edge_pairs:
            deg[a] += 1
            deg[b] += 1
        order_key = lambda p: (-(deg[p[0]] + deg[p[1]]), p)
        self.edge_list = sorted([p for p in pairs if p in edge_pairs], key=order_key)
        self.non_edge_list = sorted([p for p in pairs if p not in edge_pairs],
                                    key=order_key)
        self.rows: list[tuple[list[Fraction], Fraction]] = []
        for j in range(k):  # b_j >= a_j ; a_{j+1} >= b_j + 2
            row = [Fraction(0)] * self.num_vars
            row[self._a(j)] = Fraction(-1)
            row[self._b(j)] = Fraction(1)
            self.rows.append((row, Fraction(0)))
            if j + 1 < k:
                row = [Fraction(0)] * self.num_vars
                row[self._b(j)] = Fraction(-1)
                row[self._a(j + 1)] = Fraction(1)
                self.rows.append((row, Fraction(2)))
        self.nodes = 0
        self.lp_solves = 0
        self.capped = False

    def _a(self, j: int) -> int:
        return self.num_edges + 2 * j

    def _b(self, j: int) -> int:
        return self.num_edges + 2 * j + 1

    def _pair_value(self, point: list[Fraction], pair) -> Fraction:
        return sum((point[e] for e in self.paths[pair]), Fraction(0))

    def _region_rows(self, pair, region) -> list[tuple[list[Fraction], Fraction]]:
        kind, j = region
        out = []

        def row(path_sign: int, var: int | None, var_sign: int, rhs) -> None:
            coeffs = [Fraction(0)] * self.num_vars
            for e in self.paths[pair]:
                coeffs[e] += path_sign
            if var is not None:
                coeffs[var] += var_sign
            out.append((coeffs, Fraction(rhs)))

        if kind == "iv":
            row(1, self._a(j), -1, 0)       # d - a_j >= 0
            row(-1, self._b(j), 1, 0)       # b_j - d >= 0
        else:
            if j > 0:
                row(1, self._b(j - 1), -1, 1)   # d >= b_{j-1} + 1
            if j < self.k:
                row(-1, self._a(j), 1, 1)       # a_j >= d + 1
        return out

    def _point_in_region(self, d: Fraction, point, region) -> bool:
        kind, j = region
        if kind == "iv":
            return point[self._a(j)] <= d <= point[self._b(j)]
        ok = True
        if j > 0:
            ok = ok and d >= point[self._b(j - 1)] + 1
        if j < self.k:
            ok = ok and d <= point[self._a(j)] - 1
        return ok

    def _solve(self) -> list[Fraction] | None:
        self.lp_solves += 1
        return solve_feasibility(self.rows, self.num_vars)

    def run(self, node_cap: int | None) -> list[Fraction] | None:
        """A feasible full assignment's point, or None (see .capped)."""
        point = self._solve()
        if point is None:
            return None
        k = self.k
        if k == 1:
            # single interval: every graph edge is pinned to it
            for pair in self.edge_list:
                self.rows.extend(self._region_rows(pair, ("iv", 0)))
            if not all(self._point_in_region(self._pair_value(point, p),
                                             point, ("iv", 0))
                       for p in self.edge_list):
                point = self._solve()
                if point is None:
                    return None
            todo = list(self.non_edge_list)
            return self._dfs(todo, 0, point, 1, node_cap)
        todo = self.edge_list + self.non_edge_list
        return self._dfs(todo, 0, point, 0, node_cap)

    def _dfs(self, todo, i, point, used_prefix, node_cap):
        if i == len(todo):
            return point
        if node_cap is not None and self.nodes >= node_cap:
            self.capped = True
            return None
        if self.deadline is not None and time.monotonic() > self.deadline:
            self.capped = True
            return None
        pair = todo[i]
        is_edge = i < len(self.edge_list) and self.k > 1
        if self.k == 1:
            is_edge = False  # edges were pinned up front
        if is_edge:
            limit = min(self.k, used_prefix + 1)
            regions = [("iv", j) for j in range(limit)]
        else:
            regions = [("gap", j) for j in range(self.k + 1)]
        d = self._pair_value(point, pair)
        regions.sort(key=lambda r: not self._point_in_region(d, point, r))
        for region in regions:
            self.nodes += 1
            added = self._region_rows(pair, region)
            self.rows.extend(added)
            if self._point_in_region(d, point, region):
                nxt = point
            else:
                nxt = self._solve()
            if nxt is not None:
                new_prefix = used_prefix
                if is_edge and region[0] == "iv":
                    new_prefix = max(new_prefix, region[1] + 1)
                result = self._dfs(todo, i + 1, nxt, new_prefix, node_cap)
                if result is not None:
                    return result
            del self.rows[len(self.rows) - len(added):]
            if self.capped:
                return None
        return None


def _witness_to_rep(g: SimpleGraph, k: int, topo: Topology,
                    point: list[Fraction]) -> Representation:
    labels = g.vertices
    n = len(labels)
    num_edges = len(topo)

    def name(x: int) -> str:
        return labels[x] if x < n else f"_i{x}"

    edges = [(name(a), name(b), point[i]) for i, (a, b) in enumerate(topo)]
    tree = WeightedTree(edges, {labels[i]: labels[i] for i in range(n)})
    ivs = [Interval(point[num_edges + 2 * j], point[num_edges + 2 * j + 1])
           for j in range(k)]
    if k == 1:
        return pcg(tree, ivs[0])
    return multi(tree, ivs)


def _graph_edge_indices(g: SimpleGraph) -> frozenset[tuple[int, int]]:
    idx = {v: i for i, v in enumerate(g.vertices)}
    return frozenset(tuple(sorted((idx[u], idx[v]))) for u, v in g.edges)


def search_topologies(g: SimpleGraph, k: int,
                      topologies: Iterable[Topology] | None = None,
                      budget: SearchBudget | None = None,
                      use_orbit_filter: bool = True) -> SearchOutcome:
    """Complete search for a k-interval representation of ``g``.

    ``topologies`` may restrict the candidate shapes (the search is then
    complete relative to that family); by default every shape on n
    leaves is tried, filtered to one representative per automorphism
    orbit of ``g``.  Shapes abandoned because of the per-topology node
    cap are revisited without a cap before the search may conclude
    "exhausted", so a definitive no never rests on a capped run.
    """
    budget = budget or SearchBudget()
    n = g.n
    if n < 2:
        raise ValueError("search needs at least two vertices")
    if k < 1:
        raise ValueError("k must be at least 1")
    max_n = budget.resolved_max_n(k)
    if n > max_n:
        return SearchOutcome("budget", reason=f"n={n} exceeds budget max_n={max_n}")
    deadline = (time.monotonic() + budget.time_limit
                if budget.time_limit is not None else None)
    edge_pairs = _graph_edge_indices(g)
    if topologies is None:
        stream: Iterable[Topology] = enumerate_topologies(n)
        if use_orbit_filter:
            perms = leaf_permutations(g)
            if len(perms) > 1:
                stream = orbit_filter(stream, n, perms)
    else:
        stream = topologies

    stats = SearchStats()
    if budget.jobs > 1:
        return _search_parallel(g, k, list(stream), budget, deadline, edge_pairs)

    capped_topos: list[Topology] = []
    for passno in (1, 2):
        todo = stream if passno == 1 else capped_topos
        for topo in todo:
            if passno == 1:
                stats.topologies += 1
                if (budget.max_topologies is not None
                        and stats.topologies > budget.max_topologies):
                    return SearchOutcome("budget", stats=stats,
                                         reason="topology budget exceeded")
            if deadline is not None and time.monotonic() > deadline:
                return SearchOutcome("budget", stats=stats, reason="time limit")
            if budget.max_nodes is not None and stats.nodes > budget.max_nodes:
                return SearchOutcome("budget", stats=stats, reason="node budget")
            engine = _TopologySearch(n, k, edge_pairs, topo, deadline)
            cap = budget.node_cap_per_topology if passno == 1 else None
            point = engine.run(cap)
            stats.nodes += engine.nodes
            stats.lp_solves += engine.lp_solves
            if point is not None:
                rep = _witness_to_rep(g, k, topo, point)
                if evaluate(rep) != g:
                    raise AssertionError("witness failed re-evaluation")
                return SearchOutcome("yes", witness=rep, stats=stats)
            if engine.capped:
                if deadline is not None and time.monotonic() > deadline:
                    return SearchOutcome("budget", stats=stats, reason="time limit")
                if passno == 1:
                    capped_topos.append(topo)
        if not capped_topos:
            break
    return SearchOutcome("exhausted", stats=stats)


def branch_feasible(topo: Topology, g: SimpleGraph, k: int,
                    assignment: dict[tuple[int, int], tuple[str, int]],
                    ) -> Representation | None:
    """Feasibility of one complete region assignment on one shape.

    ``assignment`` maps each sorted leaf-index pair to ("iv", j) with
    0 <= j < k, or ("gap", j) with 0 <= j <= k; graph edges must sit
    in intervals and non-edges in gaps.  Returns a verified
    representation, or None when the assignment admits no weights.
    """
    engine = _TopologySearch(g.n, k, _graph_edge_indices(g), topo, None)
    edge_pairs = _graph_edge_indices(g)
    for pair in engine.paths:
        if pair not in assignment:
            raise ValueError(f"pair {pair} has no region assigned")
        kind, j = assignment[pair]
        if (pair in edge_pairs) != (kind == "iv"):
            raise ValueError(f"pair {pair} assigned to the wrong region kind")
        engine.rows.extend(engine._region_rows(pair, (kind, j)))
    point = engine._solve()
    if point is None:
        return None
    rep = _witness_to_rep(g, k, topo, point)
    if evaluate(rep) != g:
        raise AssertionError("witness failed re-evaluation")
    return rep


# ----- optional process-parallel driver --------------------------------

# Set in each worker by _pool_init; a worker checks it between
# topologies so the whole pool drains quickly once one chunk wins.
# Never killing a busy worker is what keeps the pool hang-free.
_worker_stop = None


def _pool_init(stop):
    global _worker_stop
    _worker_stop = stop


def _search_chunk(args):
    n, k, edge_pairs, chunk, node_cap, time_left = args
    deadline = time.monotonic() + time_left if time_left is not None else None
    capped = []
    nodes = 0
    solves = 0
    seen = 0
    for topo in chunk:
        if _worker_stop is not None and _worker_stop.is_set():
            break
        seen += 1
        engine = _TopologySearch(n, k, edge_pairs, topo, deadline)
        point = engine.run(node_cap)
        nodes += engine.nodes
        solves += engine.lp_solves
        if point is not None:
            return ("yes", topo, point, seen, nodes, solves)
        if engine.capped:
            capped.append(topo)
    return ("done", capped, None, seen, nodes, solves)


def _search_parallel(g, k, topos, budget, deadline, edge_pairs):
    import multiprocessing as mp
    from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
    from concurrent.futures.process import BrokenProcessPool

    n = g.n
    stats = SearchStats()
    chunk_size = max(1, len(topos) // (budget.jobs * 8))
    chunks = [topos[i:i + chunk_size] for i in range(0, len(topos), chunk_size)]
    time_left = None
    if deadline is not None:
        time_left = max(0.0, deadline - time.monotonic())
    capped: list[Topology] = []
    winner = None
    ctx = mp.get_context("fork")
    stop = ctx.Event()
    pool = ProcessPoolExecutor(max_workers=budget.jobs, mp_context=ctx,
                               initializer=_pool_init, initargs=(stop,))
    try:
        pending = {pool.submit(_search_chunk,
                               (n, k, edge_pairs, c,
                                budget.node_cap_per_topology, time_left))
                   for c in chunks}
        while pending:
            done, pending = wait(pending, return_when=FIRST_COMPLETED)
            for fut in done:
                tag, payload, point, seen, nodes, solves = fut.result()
                stats.topologies += seen
                stats.nodes += nodes
                stats.lp_solves += solves
                if tag == "yes":
                    if winner is None:
                        winner = (payload, point)
                    stop.set()
                else:
                    capped.extend(payload)
    except BrokenProcessPool:
        log.warning("worker pool broke; retrying the search in one process")
        stop.set()
        pool.shutdown(wait=False, cancel_futures=True)
        remaining = None
        if deadline is not None:
            remaining = max(0.001, deadline - time.monotonic())
        serial = replace(budget, jobs=1, time_limit=remaining)
        return search_topologies(g, k, topologies=topos, budget=serial)
    finally:
        pool.shutdown(wait=False)
    if winner is not None:
        topo, point = winner
        rep = _witness_to_rep(g, k, topo, point)
        if evaluate(rep) != g:
            raise AssertionError("witness failed re-evaluation")
        return SearchOutcome("yes", witness=rep, stats=stats)
    if deadline is not None and time.monotonic() > deadline:
        return SearchOutcome("budget", stats=stats, reason="time limit")
    for topo in capped:
        engine = _TopologySearch(n, k, edge_pairs, topo, deadline)
        point = engine.run(None)
        stats.nodes += engine.nodes
        stats.lp_solves += engine.lp_solves
        if point is not None:
            rep = _witness_to_rep(g, k, topo, point)
            if evaluate(rep) != g:
                raise AssertionError("witness failed re-evaluation")
            return SearchOutcome("yes", witness=rep, stats=stats)
        if engine.capped:
            return SearchOutcome("budget", stats=stats, reason="time limit")
    return SearchOutcome("exhausted", stats=stats)
