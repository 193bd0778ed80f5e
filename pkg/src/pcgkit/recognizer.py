"""Exact recognition: does a graph admit a k-interval representation?

The raw engine in :mod:`pcgkit.search` is complete but exponential, so
single-interval queries are first shrunk by three graph reductions that
preserve membership in both directions:

* components — a disjoint union is representable iff each component
  is: restricting a tree realizes any induced subgraph, and component
  trees can be rejoined below one far-away hub once their intervals
  are aligned;
* pendant removal — a degree-1 vertex can always be re-attached by
  splitting its neighbour's leaf edge so the new pair lands exactly on
  the upper endpoint while every other distance overshoots it;
* false-twin removal — a vertex sharing its open neighbourhood with a
  non-adjacent mate can be re-attached by duplicating the mate's leaf
  close enough that the twin pair stays below the interval.

Every reduction is replayed as exact tree surgery on the core's
witness and the final representation is re-evaluated against the input
graph before being returned, so a "yes" is always certified.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .graphs import SimpleGraph, canonical_labeling
from .representations import Interval, Representation, Variant, evaluate, pcg
from .search import SearchBudget, SearchOutcome, SearchStats, search_topologies
from .transforms import align_to_common_interval, integerize, shift_part
from .trees import WeightedTree


@dataclass
class RecognitionResult:
    status: str  # "yes" | "no" | "unknown"
    representation: Representation | None = None
    stats: SearchStats = field(default_factory=SearchStats)
    reason: str = ""


def _fresh_node(taken, base: str) -> str:
    if base not in taken:
        return base
    j = 2
    while f"{base}{j}" in taken:
        j += 1
    return f"{base}{j}"


def _fresh_prefix(labels) -> str:
    prefix = "_n"
    while any(lab.startswith(prefix) for lab in labels):
        prefix += "n"
    return prefix


def normalize_node_names(tree: WeightedTree, prefix: str,
                         start: int = 0) -> tuple[WeightedTree, int]:
    """Rename nodes so labeled leaves carry their label and internals
    carry prefix+counter; returns (tree, next counter value)."""
    lab = tree.label_map()
    mapping = {}
    counter = start
    for node in tree.nodes:
        if node in lab:
            mapping[node] = lab[node]
        else:
            mapping[node] = f"{prefix}{counter}"
            counter += 1
    edges = [(mapping[a], mapping[b], w) for a, b, w in tree.edge_list()]
    return WeightedTree(edges, {v: v for v in lab.values()}), counter


def trivial_rep(label: str) -> Representation:
    """A one-vertex graph's representation (no pairs to constrain)."""
    aux = _fresh_node({label}, "_aux")
    tree = WeightedTree([(label, aux, Fraction(1))], {label: label})
    return pcg(tree, Interval(2, 3))


def prepare_for_surgery(rep: Representation) -> Representation:
    """Normalize a single-interval rep so surgery constants exist.

    After integerizing and padding every leaf edge by 1, all pair
    distances are integers >= 2, all leaf edges weigh >= 1, and the
    interval sits at [lo+2, hi+2] with lo+2 >= 2.
    """
    if rep.variant is not Variant.PCG:
        raise ValueError("surgery operates on single-interval representations")
    rep = integerize(rep)
    tree, (iv,) = shift_part(rep.tree, (rep.interval,), Fraction(1))
    return pcg(tree, iv)


def _leaf_edge(tree: WeightedTree, label: str):
    node = tree.node_of(label)
    (parent,) = tree.neighbors(node)
    return node, parent, tree.weight(node, parent)


def _rebuild(tree: WeightedTree, drop: tuple, add: list, labels: dict) -> WeightedTree:
    edges = [e for e in tree.edge_list() if tuple(sorted(e[:2])) != tuple(sorted(drop))]
    edges.extend(add)
    return WeightedTree(edges, labels)


def _evict_node_name(tree: WeightedTree, name: str) -> WeightedTree:
    """Rename an unlabeled node so ``name`` becomes available as a new
    leaf node (a vertex label may coincide with a helper node name)."""
    if name not in tree.nodes:
        return tree
    lab = tree.label_map()
    if name in lab:
        raise ValueError(f"{name!r} is already a labeled leaf")
    fresh = _fresh_node(set(tree.nodes), f"_ev_{name}")
    ren = lambda x: fresh if x == name else x
    edges = [(ren(a), ren(b), w) for a, b, w in tree.edge_list()]
    return WeightedTree(edges, {n: l for n, l in lab.items()})


def add_pendant(rep: Representation, new_label: str, host: str) -> Representation:
    """Extend a representation by a vertex adjacent only to ``host``.

    The host's leaf edge is split at distance eps from the host and
    the new leaf hangs there with weight hi - eps, so the new pair
    measures exactly hi; eps is kept below half the host's distance to
    anyone else, which pushes every other new distance strictly above
    the interval.  Requires positive leaf edges and hi > 0 (see
    prepare_for_surgery).
    """
    tree, iv = rep.tree, rep.interval
    tree = _evict_node_name(tree, new_label)
    node, parent, w = _leaf_edge(tree, host)
    hi = iv.hi
    others = [d for (x, y), d in tree.all_pair_distances().items()
              if host in (x, y)]
    dmin = min(others) if others else None
    eps = min([w, hi, Fraction(1)] + ([dmin / 2] if dmin is not None else []))
    eps /= 2
    if eps <= 0:
        raise ValueError("host leaf edge must have positive weight")
    split = _fresh_node(set(tree.nodes) | {new_label}, f"_p_{new_label}")
    labels = dict(tree.label_map())
    labels[new_label] = new_label
    new_tree = _rebuild(tree, (node, parent),
                        [(node, split, eps), (split, parent, w - eps),
                         (split, new_label, hi - eps)], labels)
    return pcg(new_tree, iv)


def add_false_twin(rep: Representation, new_label: str, of: str) -> Representation:
    """Extend a representation by a non-adjacent copy of leaf ``of``.

    The mate's leaf edge is split at delta < lo/2 and the copy hangs
    there with the same weight delta: distances to everyone else are
    unchanged (same adjacency) while the twin pair measures
    2*delta < lo, below the interval.  Requires lo > 0.
    """
    tree, iv = rep.tree, rep.interval
    tree = _evict_node_name(tree, new_label)
    if iv.lo <= 0:
        raise ValueError("twin surgery needs a positive lower endpoint")
    node, parent, w = _leaf_edge(tree, of)
    delta = min(w, iv.lo / 2) / 2
    if delta <= 0:
        raise ValueError("mate leaf edge must have positive weight")
    split = _fresh_node(set(tree.nodes) | {new_label}, f"_t_{new_label}")
    labels = dict(tree.label_map())
    labels[new_label] = new_label
    new_tree = _rebuild(tree, (node, parent),
                        [(node, split, delta), (split, parent, w - delta),
                         (split, new_label, delta)], labels)
    return pcg(new_tree, iv)


def join_components(reps: list[Representation]) -> Representation:
    """Combine disjoint single-interval representations into one.

    All parts are first aligned to a shared interval [A, A+D]; each
    tree is then hooked (at the midpoint of its first edge) onto a
    common hub with connector weight A+D+1, making every cross-part
    distance at least twice that — far above the interval.
    """
    if len(reps) == 1:
        return reps[0]
    aligned, common = align_to_common_interval(
        [(r.tree, r.interval) for r in reps])
    connector = common.hi + 1
    all_labels = [lab for r in reps for lab in r.labels]
    prefix = _fresh_prefix(all_labels)
    hub = f"{prefix}_hub"
    counter = 0
    edges: list[tuple[str, str, Fraction]] = []
    labels: dict[str, str] = {}
    for i, (tree, _) in enumerate(aligned):
        tree, counter = normalize_node_names(tree, prefix, counter)
        tree_edges = tree.edge_list()
        (u, v, w) = tree_edges[0]
        anchor = f"{prefix}_a{i}"
        edges.append((u, anchor, w / 2))
        edges.append((anchor, v, w / 2))
        edges.append((anchor, hub, Fraction(connector)))
        edges.extend(tree_edges[1:])
        for lab in tree.labels:
            labels[lab] = lab
    return pcg(WeightedTree(edges, labels), common)


# ----- graph reductions -------------------------------------------------


def strip_reductions(g: SimpleGraph) -> tuple[SimpleGraph, list[tuple[str, str, str]]]:
    """Shrink by pendant/false-twin removal; returns (core, records).

    Records are (kind, removed, anchor) in removal order; replaying
    them reversed on a core representation rebuilds the input graph.
    """
    records: list[tuple[str, str, str]] = []
    h = g
    changed = True
    while changed and h.n > 1:
        changed = False
        for v in h.vertices:
            if h.degree(v) == 1:
                (host,) = h.neighbors(v)
                records.append(("pendant", v, host))
                h = h.induced_subgraph([u for u in h.vertices if u != v])
                changed = True
                break
        if changed:
            continue
        for i, u in enumerate(h.vertices):
            for v in h.vertices[i + 1:]:
                if not h.has_edge(u, v) and h.neighbors(u) == h.neighbors(v):
                    records.append(("twin", v, u))
                    h = h.induced_subgraph([x for x in h.vertices if x != v])
                    changed = True
                    break
            if changed:
                break
    return h, records


def replay_reductions(rep: Representation,
                      records: list[tuple[str, str, str]]) -> Representation:
    """Undo strip_reductions on a representation by tree surgery."""
    if records:
        rep = prepare_for_surgery(rep)
    for kind, removed, anchor in reversed(records):
        if kind == "pendant":
            rep = add_pendant(rep, removed, anchor)
        else:
            rep = add_false_twin(rep, removed, anchor)
    return rep


# ----- the public recognizer --------------------------------------------


_CACHE: dict[tuple, tuple[str, Representation | None]] = {}


def clear_cache() -> None:
    _CACHE.clear()


def _cached_search(g: SimpleGraph, k: int, budget: SearchBudget,
                   stats: SearchStats) -> tuple[str, Representation | None, str]:
    key, labeling = canonical_labeling(g)
    cache_key = (key, k)
    hit = _CACHE.get(cache_key)
    if hit is not None:
        status, canon_rep = hit
        if canon_rep is None:
            return status, None, "cached"
        inverse = {f"c{i}": v for v, i in labeling.items()}
        prefix = _fresh_prefix(labeling)
        trees = []
        counter = 0
        for t in canon_rep.trees:
            t = t.relabel_leaves(inverse)
            t, counter = normalize_node_names(t, prefix, counter)
            trees.append(t)
        rep = Representation(canon_rep.variant, tuple(trees),
                             canon_rep.intervals)
        return status, rep, "cached"
    outcome = search_topologies(g, k, budget=budget)
    stats.merge(outcome.stats)
    if outcome.status == "yes":
        forward = {v: f"c{i}" for v, i in labeling.items()}
        canon_rep = Representation(
            outcome.witness.variant,
            tuple(t.relabel_leaves(forward) for t in outcome.witness.trees),
            outcome.witness.intervals)
        _CACHE[cache_key] = ("yes", canon_rep)
        return "yes", outcome.witness, ""
    if outcome.status == "exhausted":
        _CACHE[cache_key] = ("no", None)
        return "no", None, ""
    return "unknown", None, outcome.reason


def recognize(g: SimpleGraph, k: int = 1,
              budget: SearchBudget | None = None) -> RecognitionResult:
    """Decide membership for the k-interval family, with certificate.

    "yes" carries a representation that re-evaluates to ``g`` exactly;
    "no" means the (reduced) search space was exhausted; "unknown"
    reports the budget that ran out.  Reductions apply only at k=1,
    where they are membership-preserving in both directions.
    """
    if g.n == 0:
        raise ValueError("recognition needs at least one vertex")
    if k < 1:
        raise ValueError("k must be at least 1")
    budget = budget or SearchBudget()
    stats = SearchStats()
    if g.n == 1:
        return RecognitionResult("yes", trivial_rep(g.vertices[0]), stats)

    if k != 1:
        status, rep, reason = _cached_search(g, k, budget, stats)
        return RecognitionResult(status, rep, stats, reason)

    component_reps: list[Representation] = []
    for comp in g.components():
        sub = g.induced_subgraph(comp)
        if sub.n == 1:
            component_reps.append(trivial_rep(comp[0]))
            continue
        core, records = strip_reductions(sub)
        if core.n == 1:
            rep = trivial_rep(core.vertices[0])
        else:
            status, rep, reason = _cached_search(core, 1, budget, stats)
            if status == "no":
                return RecognitionResult(
                    "no", None, stats,
                    f"component core on {core.n} vertices has no representation")
            if status == "unknown":
                return RecognitionResult("unknown", None, stats, reason)
        rep = replay_reductions(rep, records)
        if evaluate(rep) != sub:
            raise AssertionError("surgery produced a wrong component witness")
        component_reps.append(rep)
    rep = join_components(component_reps)
    if evaluate(rep) != g:
        raise AssertionError("joined witness failed re-evaluation")
    return RecognitionResult("yes", rep, stats)
