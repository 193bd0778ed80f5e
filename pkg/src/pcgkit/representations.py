"""Tree-plus-interval representations of graphs and their evaluation.

A representation bundles one or more weighted trees with closed
intervals of nonnegative rationals and names which rule turns tree
distances into edges:

* ``PCG``           one tree, one interval; edge iff distance lies in it.
* ``LPG``           like PCG with the interval anchored at 0.
* ``MLPG``          like PCG with the interval reaching the largest
                    leaf-pair distance (min-distance semantics).
* ``MULTI``         one tree, several pairwise disjoint intervals; edge
                    iff the distance lies in any of them.
* ``OR`` / ``AND``  several trees on one label set, one interval each;
                    edge iff the pair qualifies in at least one tree /
                    in every tree.

Membership is decided with exact rational arithmetic throughout.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .graphs import SimpleGraph
from .trees import WeightedTree


@dataclass(frozen=True, order=True)
class Interval:
    """Closed interval [lo, hi] of nonnegative rationals."""

    lo: Fraction
    hi: Fraction

    def __init__(self, lo, hi):
        lof, hif = Fraction(lo), Fraction(hi)
        if lof < 0:
            raise ValueError(f"interval start {lof} is negative")
        if hif < lof:
            raise ValueError(f"empty interval [{lof}, {hif}]")
        object.__setattr__(self, "lo", lof)
        object.__setattr__(self, "hi", hif)

    def contains(self, x) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    def length(self) -> Fraction:
        return self.hi - self.lo

    def scaled(self, factor) -> "Interval":
        f = Fraction(factor)
        return Interval(self.lo * f, self.hi * f)

    def shifted(self, amount) -> "Interval":
        a = Fraction(amount)
        return Interval(self.lo + a, self.hi + a)

    def __repr__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def intervals_disjoint_sorted(intervals: tuple[Interval, ...]) -> bool:
    for a, b in zip(intervals, intervals[1:]):
        if not a.hi < b.lo:
            return False
    return True


class Variant(enum.Enum):
    PCG = "pcg"
    LPG = "lpg"
    MLPG = "mlpg"
    MULTI = "multi"
    OR = "or"
    AND = "and"


@dataclass(frozen=True)
class Representation:
    """A variant tag, trees, and intervals; validated on construction."""

    variant: Variant
    trees: tuple[WeightedTree, ...]
    intervals: tuple[Interval, ...]

    def __init__(self, variant: Variant, trees, intervals):
        trees = tuple(trees)
        intervals = tuple(intervals)
        if not trees:
            raise ValueError("a representation needs at least one tree")
        labels = trees[0].labels
        for t in trees[1:]:
            if t.labels != labels:
                raise ValueError("all trees must agree on the label set")
        if variant in (Variant.PCG, Variant.LPG, Variant.MLPG):
            if len(trees) != 1 or len(intervals) != 1:
                raise ValueError(f"{variant.value} takes one tree and one interval")
        elif variant is Variant.MULTI:
            if len(trees) != 1:
                raise ValueError("multi-interval takes a single tree")
            if not intervals_disjoint_sorted(intervals):
                raise ValueError("intervals must be sorted and pairwise disjoint")
        else:
            if len(trees) != len(intervals):
                raise ValueError("need exactly one interval per tree")
        if variant is Variant.LPG and intervals[0].lo != 0:
            raise ValueError("an LPG interval must start at 0")
        object.__setattr__(self, "variant", variant)
        object.__setattr__(self, "trees", trees)
        object.__setattr__(self, "intervals", intervals)

    @property
    def labels(self) -> tuple[str, ...]:
        return self.trees[0].labels

    @property
    def tree(self) -> WeightedTree:
        if len(self.trees) != 1:
            raise ValueError("representation has several trees")
        return self.trees[0]

    @property
    def interval(self) -> Interval:
        if len(self.intervals) != 1:
            raise ValueError("representation has several intervals")
        return self.intervals[0]

    def parts(self) -> list[tuple[WeightedTree, Interval]]:
        if self.variant in (Variant.OR, Variant.AND):
            return list(zip(self.trees, self.intervals))
        return [(self.trees[0], i) for i in self.intervals]

    def __repr__(self) -> str:
        return (f"Representation({self.variant.value}, {len(self.trees)} trees, "
                f"intervals {list(self.intervals)})")


def pcg(tree: WeightedTree, interval: Interval) -> Representation:
    return Representation(Variant.PCG, (tree,), (interval,))


def lpg(tree: WeightedTree, hi) -> Representation:
    return Representation(Variant.LPG, (tree,), (Interval(0, hi),))


def mlpg(tree: WeightedTree, lo) -> Representation:
    """Min-distance part: interval [lo, mu(T)], or an unreachable
    singleton when lo exceeds every distance (the empty complement)."""
    lof = Fraction(lo)
    m = tree.mu()
    hi = m if m >= lof else lof
    return Representation(Variant.MLPG, (tree,), (Interval(lof, hi),))


def multi(tree: WeightedTree, intervals) -> Representation:
    return Representation(Variant.MULTI, (tree,), tuple(intervals))


def or_pcg(parts: list[tuple[WeightedTree, Interval]]) -> Representation:
    return Representation(Variant.OR, tuple(t for t, _ in parts),
                          tuple(i for _, i in parts))


def and_pcg(parts: list[tuple[WeightedTree, Interval]]) -> Representation:
    return Representation(Variant.AND, tuple(t for t, _ in parts),
                          tuple(i for _, i in parts))


def evaluate(rep: Representation) -> SimpleGraph:
    """The graph a representation denotes, via exact membership tests."""
    labels = rep.labels
    if len(labels) == 0:
        raise ValueError("no labeled leaves to evaluate")
    dists = [t.all_pair_distances() for t in rep.trees]
    edges = []
    n = len(labels)
    for i in range(n):
        for j in range(i + 1, n):
            pair = (labels[i], labels[j])
            if rep.variant is Variant.MULTI:
                d = dists[0][pair]
                hit = any(iv.contains(d) for iv in rep.intervals)
            elif rep.variant is Variant.OR:
                hit = any(iv.contains(ds[pair])
                          for ds, iv in zip(dists, rep.intervals))
            elif rep.variant is Variant.AND:
                hit = all(iv.contains(ds[pair])
                          for ds, iv in zip(dists, rep.intervals))
            else:
                hit = rep.intervals[0].contains(dists[0][pair])
            if hit:
                edges.append(pair)
    return SimpleGraph(labels, edges)
