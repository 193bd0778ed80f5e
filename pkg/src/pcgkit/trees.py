"""Edge-weighted unrooted trees with labeled leaves and exact arithmetic.

Weights are nonnegative ``Fraction`` values.  Labeled nodes must have
degree 1; not every degree-1 node needs a label (unlabeled leaves act as
padding, e.g. when a single graph vertex needs a host tree).  On
construction, unlabeled degree-2 nodes are suppressed by merging their
two incident edges, so structurally equal trees compare equal.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Weight = Union[int, Fraction]


def _frac(x) -> Fraction:
    f = Fraction(x)
    if f < 0:
        raise ValueError(f"negative edge weight {f}")
    return f


class WeightedTree:
    """Immutable weighted tree.

    Parameters
    ----------
    edges:
        Triples ``(u, v, w)`` of node names and a nonnegative rational
        weight.  Node names are strings.
    leaves:
        Optional mapping ``node -> label``.  When omitted, every
        degree-1 node is labeled with its own name.
    """

    __slots__ = ("_adj", "_leaf_of_label", "_labels", "_nodes")

    def __init__(self, edges: Iterable[tuple[str, str, Weight]],
                 leaves: Mapping[str, str] | None = None):
        adj: dict[str, dict[str, Fraction]] = {}
        for u, v, w in edges:
            u, v = str(u), str(v)
            if u == v:
                raise ValueError(f"self-loop at {u!r}")
            adj.setdefault(u, {})
            adj.setdefault(v, {})
            if v in adj[u]:
                raise ValueError(f"duplicate edge {u!r}-{v!r}")
            wf = _frac(w)
            adj[u][v] = wf
            adj[v][u] = wf
        if not adj:
            raise ValueError("a tree needs at least one edge")
        nodes = sorted(adj)
        if len(adj) != sum(len(d) for d in adj.values()) // 2 + 1:
            raise ValueError("edge count does not match a tree")
        # connectivity
        seen = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(adj):
            raise ValueError("tree is not connected")

        if leaves is None:
            leaf_of_label = {n: n for n in nodes if len(adj[n]) == 1}
        else:
            leaf_of_label = {}
            for node, label in leaves.items():
                node = str(node)
                if node not in adj:
                    raise ValueError(f"labeled node {node!r} not in tree")
                if len(adj[node]) != 1:
                    raise ValueError(f"labeled node {node!r} has degree "
                                     f"{len(adj[node])}, expected 1")
                label = str(label)
                if label in leaf_of_label:
                    raise ValueError(f"duplicate label {label!r}")
                leaf_of_label[label] = node

        # suppress unlabeled degree-2 nodes
        labeled_nodes = set(leaf_of_label.values())
        changed = True
        while changed:
            changed = False
            for x in list(adj):
                if x in labeled_nodes or len(adj[x]) != 2:
                    continue
                (a, wa), (b, wb) = adj[x].items()
                if b in adj[a]:
                    raise ValueError("suppression would create a parallel edge")
                del adj[a][x]
                del adj[b][x]
                del adj[x]
                adj[a][b] = wa + wb
                adj[b][a] = wa + wb
                changed = True
        self._adj = {x: dict(sorted(d.items())) for x, d in sorted(adj.items())}
        self._leaf_of_label = dict(sorted(leaf_of_label.items()))
        self._labels = tuple(sorted(leaf_of_label))
        self._nodes = tuple(sorted(adj))

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    @property
    def nodes(self) -> tuple[str, ...]:
        return self._nodes

    def node_of(self, label: str) -> str:
        return self._leaf_of_label[label]

    def label_map(self) -> dict[str, str]:
        """node -> label for the labeled leaves."""
        return {n: lab for lab, n in self._leaf_of_label.items()}

    def degree(self, node: str) -> int:
        return len(self._adj[node])

    def neighbors(self, node: str) -> dict[str, Fraction]:
        return dict(self._adj[node])

    def edge_list(self) -> list[tuple[str, str, Fraction]]:
        out = []
        for u, d in self._adj.items():
            for v, w in d.items():
                if u < v:
                    out.append((u, v, w))
        return out

    def weight(self, u: str, v: str) -> Fraction:
        return self._adj[u][v]

    def total_weight(self) -> Fraction:
        return sum((w for _, _, w in self.edge_list()), Fraction(0))

    def path_nodes(self, a: str, b: str) -> list[str]:
        """Nodes along the unique a-b path, endpoints included."""
        if a not in self._adj or b not in self._adj:
            raise KeyError(f"unknown node {a!r} or {b!r}")
        prev = {a: None}
        stack = [a]
        while stack:
            x = stack.pop()
            if x == b:
                break
            for y in self._adj[x]:
                if y not in prev:
                    prev[y] = x
                    stack.append(y)
        path = [b]
        while path[-1] != a:
            path.append(prev[path[-1]])
        path.reverse()
        return path

    def node_distance(self, a: str, b: str) -> Fraction:
        path = self.path_nodes(a, b)
        return sum((self._adj[u][v] for u, v in zip(path, path[1:])),
                   Fraction(0))

    def distance(self, label_a: str, label_b: str) -> Fraction:
        """Exact path distance between two labeled leaves."""
        return self.node_distance(self._leaf_of_label[label_a],
                                  self._leaf_of_label[label_b])

    def all_pair_distances(self) -> dict[tuple[str, str], Fraction]:
        """Distances for every unordered labeled pair, keyed sorted."""
        out: dict[tuple[str, str], Fraction] = {}
        labs = self._labels
        for i, la in enumerate(labs):
            # one DFS from each leaf; trees are small
            start = self._leaf_of_label[la]
            dist = {start: Fraction(0)}
            stack = [start]
            while stack:
                x = stack.pop()
                for y, w in self._adj[x].items():
                    if y not in dist:
                        dist[y] = dist[x] + w
                        stack.append(y)
            for lb in labs[i + 1:]:
                out[(la, lb)] = dist[self._leaf_of_label[lb]]
        return out

    def mu(self) -> Fraction:
        """Largest distance between two labeled leaves."""
        if len(self._labels) < 2:
            raise ValueError("mu needs at least two labeled leaves")
        return max(self.all_pair_distances().values())

    def restrict(self, keep_labels: Iterable[str]) -> "WeightedTree":
        """Minimal subtree spanning the given labels, distances preserved."""
        keep = set(keep_labels)
        unknown = keep - set(self._labels)
        if unknown:
            raise ValueError(f"unknown labels: {sorted(unknown)}")
        if len(keep) < 2:
            raise ValueError("restriction needs at least two labels")
        keep_nodes = {self._leaf_of_label[l] for l in keep}
        adj = {x: dict(d) for x, d in self._adj.items()}
        # peel degree-1 nodes that are not kept leaves
        changed = True
        while changed:
            changed = False
            for x in list(adj):
                if x in keep_nodes or len(adj[x]) != 1:
                    continue
                (y,) = adj[x]
                del adj[y][x]
                del adj[x]
                changed = True
        edges = [(u, v, w) for u, d in adj.items() for v, w in d.items() if u < v]
        return WeightedTree(edges, {self._leaf_of_label[l]: l for l in keep})

    def scale(self, factor: Weight) -> "WeightedTree":
        f = Fraction(factor)
        if f <= 0:
            raise ValueError("scale factor must be positive")
        return WeightedTree([(u, v, w * f) for u, v, w in self.edge_list()],
                            {n: l for n, l in self.label_map().items()})

    def pad_leaf_edges(self, amount: Weight) -> "WeightedTree":
        """Add ``amount`` to every edge per incident leaf endpoint.

        Every leaf-to-leaf distance grows by exactly ``2 * amount``; a
        single-edge tree has both endpoints on one edge, hence the
        per-endpoint accounting.
        """
        a = Fraction(amount)
        edges = []
        for u, v, w in self.edge_list():
            bump = sum(a for x in (u, v) if len(self._adj[x]) == 1)
            edges.append((u, v, w + bump))
        return WeightedTree(edges, {n: l for n, l in self.label_map().items()})

    def relabel_leaves(self, mapping: dict[str, str]) -> "WeightedTree":
        """Rename labels via an injective old-label -> new-label map."""
        if sorted(mapping) != list(self._labels):
            raise ValueError("mapping must cover exactly the label set")
        if len(set(mapping.values())) != len(mapping):
            raise ValueError("mapping is not injective")
        return WeightedTree(self.edge_list(),
                            {self._leaf_of_label[old]: new
                             for old, new in mapping.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedTree):
            return NotImplemented
        return self._adj == other._adj and self._leaf_of_label == other._leaf_of_label

    def __hash__(self) -> int:
        return hash((tuple(self.edge_list()), self._labels,
                     tuple(sorted(self._leaf_of_label.items()))))

    def __repr__(self) -> str:
        return (f"WeightedTree({len(self._nodes)} nodes, "
                f"{len(self._labels)} labeled leaves)")


def longest_pair_holds(tree: WeightedTree, labels: Iterable[str],
                       u: str, v: str) -> bool:
    """Whether d(u, v) is a maximum over all pairs from ``labels``
    inside the subtree spanned by ``labels``.

    The restriction does not change distances, so the check compares
    d(u, v) against every pair drawn from ``labels`` directly.
    """
    labs = sorted(set(labels))
    if u not in labs or v not in labs:
        raise ValueError("u and v must belong to the label set")
    target = tree.distance(u, v)
    for i, a in enumerate(labs):
        for b in labs[i + 1:]:
            if tree.distance(a, b) > target:
                return False
    return True


def star_tree(leaf_weights: Mapping[str, Weight], center: str = "_c") -> WeightedTree:
    """Star with one labeled leaf per entry; leaf label = node name."""
    if center in leaf_weights:
        raise ValueError("center name collides with a leaf")
    edges = [(center, leaf, w) for leaf, w in leaf_weights.items()]
    return WeightedTree(edges, {leaf: leaf for leaf in leaf_weights})


def caterpillar(labels: Sequence[str], leaf_weights: Sequence[Weight],
                spine_weights: Sequence[Weight]) -> WeightedTree:
    """Caterpillar: spine of internal nodes, one labeled leaf each.

    ``spine_weights`` has one entry fewer than ``labels``.
    """
    k = len(labels)
    if k < 2:
        raise ValueError("caterpillar needs at least two leaves")
    if len(leaf_weights) != k or len(spine_weights) != k - 1:
        raise ValueError("weight counts do not match the label count")
    edges: list[tuple[str, str, Weight]] = []
    spine = [f"_s{i}" for i in range(k)]
    for i, lab in enumerate(labels):
        edges.append((spine[i], f"_leaf{i}", leaf_weights[i]))
    for i in range(k - 1):
        edges.append((spine[i], spine[i + 1], spine_weights[i]))
    return WeightedTree(edges, {f"_leaf{i}": lab for i, lab in enumerate(labels)})
