"""Graph-preserving rewrites of tree-interval representations.

Everything here is exact: inputs are rational, outputs are rational,
and each transform's contract is stated in terms of the evaluated
graph (same graph, complement graph, fewer/equal intervals, ...).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

from .graphs import SimpleGraph
from .representations import (Interval, Representation, Variant, and_pcg,
                              lpg, mlpg, multi, or_pcg, pcg)
from .trees import WeightedTree, star_tree


def _part_denominator_lcm(tree: WeightedTree, intervals: Iterable[Interval]) -> int:
    dens = [w.denominator for _, _, w in tree.edge_list()]
    for iv in intervals:
        dens.append(iv.lo.denominator)
        dens.append(iv.hi.denominator)
    return math.lcm(*dens) if dens else 1


def scale_part(tree: WeightedTree, intervals: tuple[Interval, ...],
               factor: Fraction) -> tuple[WeightedTree, tuple[Interval, ...]]:
    """Scale a tree and its intervals together; the graph is unchanged."""
    return tree.scale(factor), tuple(iv.scaled(factor) for iv in intervals)


def shift_part(tree: WeightedTree, intervals: tuple[Interval, ...],
               pad: Fraction) -> tuple[WeightedTree, tuple[Interval, ...]]:
    """Pad every leaf edge by ``pad``; all pair distances grow by
    2*pad, so shifting the intervals by 2*pad preserves the graph."""
    return (tree.pad_leaf_edges(pad),
            tuple(iv.shifted(2 * pad) for iv in intervals))


def integerize(rep: Representation) -> Representation:
    """Scale each tree (with its paired intervals) by the least common
    denominator so that all weights and endpoints become integers."""
    new_trees = []
    new_intervals = []
    if rep.variant is Variant.MULTI:
        groups = [(rep.tree, rep.intervals)]
    else:
        groups = [(t, (iv,)) for t, iv in rep.parts()]
    for tree, ivs in groups:
        mult = _part_denominator_lcm(tree, ivs)
        if mult != 1:
            tree, ivs = scale_part(tree, ivs, Fraction(mult))
        new_trees.append(tree)
        new_intervals.extend(ivs)
    return Representation(rep.variant, tuple(new_trees), tuple(new_intervals))


def widen_degenerate(tree: WeightedTree,
                     interval: Interval) -> tuple[WeightedTree, Interval]:
    """Replace a point interval [a, a] by one of positive length.

    With integer weights, adding 1 to every leaf-incident edge end
    lifts each pair distance by exactly 2, so edges land on a+2 and
    the interval [a+1, a+2] keeps them while excluding every other
    integer distance -- except former distance a-1, which would land
    on a+1.  When some pair sits at a-1 the weights are doubled first
    (all distances become even, so the odd endpoint 2a+1 is safe).
    """
    if interval.lo != interval.hi:
        return tree, interval
    for _, _, w in tree.edge_list():
        if w.denominator != 1:
            raise ValueError("widen_degenerate needs integer weights")
    if interval.lo.denominator != 1:
        raise ValueError("widen_degenerate needs an integer endpoint")
    a = interval.lo
    dists = tree.all_pair_distances().values()
    if any(d == a - 1 for d in dists):
        tree = tree.scale(Fraction(2))
        a = 2 * a
    tree = tree.pad_leaf_edges(Fraction(1))
    return tree, Interval(a + 1, a + 2)


def align_to_common_interval(
        parts: list[tuple[WeightedTree, Interval]],
        trace: list | None = None,
) -> tuple[list[tuple[WeightedTree, Interval]], Interval]:
    """Rescale and pad parts so every part uses one shared interval.

    Per part: integerize, widen a point interval, then double all
    numbers (so the later half-padding stays integral).  With
    d_i = b_i - a_i and D the product of the d_i, part i is scaled by
    D/d_i (interval length becomes D everywhere), and its leaf edges
    are padded by (A - a'_i)/2 where A is the largest scaled left
    endpoint.  Every part ends at [A, A + D] with its graph intact.
    """
    prepared = []
    for tree, iv in parts:
        mult = _part_denominator_lcm(tree, (iv,))
        if mult != 1:
            tree, (iv,) = scale_part(tree, (iv,), Fraction(mult))
        if iv.lo == iv.hi:
            tree, iv = widen_degenerate(tree, iv)
        tree, (iv,) = scale_part(tree, (iv,), Fraction(2))
        prepared.append((tree, iv))

    ds = [iv.hi - iv.lo for _, iv in prepared]
    big_d = math.prod(d.numerator for d in ds)
    scaled = []
    for (tree, iv), d in zip(prepared, ds):
        factor = Fraction(big_d) / d
        tree, (iv,) = scale_part(tree, (iv,), factor)
        scaled.append((tree, iv))
    big_a = max(iv.lo for _, iv in scaled)
    out = []
    common = Interval(big_a, big_a + big_d)
    for i, (tree, iv) in enumerate(scaled):
        pad = (big_a - iv.lo) / 2
        if trace is not None:
            trace.append({"part": i, "d": ds[i], "D": Fraction(big_d),
                          "a_prime": iv.lo, "b_prime": iv.hi,
                          "A": big_a, "pad": pad})
        if pad:
            tree, (iv,) = shift_part(tree, (iv,), pad)
        assert iv == common
        out.append((tree, common))
    return out, common


def normalize_single_interval(rep: Representation,
                              trace: list | None = None) -> Representation:
    """Rewrite an OR/AND family so all parts share one interval.

    If ``trace`` is a list, one dict per part is appended recording the
    proof arithmetic (d_i, D, scaled endpoints, A, pad) after the
    initial doubling.
    """
    if rep.variant not in (Variant.OR, Variant.AND):
        raise ValueError("normalize_single_interval expects an OR or AND family")
    aligned, _ = align_to_common_interval(list(rep.parts()), trace)
    trees = tuple(t for t, _ in aligned)
    ivs = tuple(iv for _, iv in aligned)
    return Representation(rep.variant, trees, ivs)


def complement_multiinterval(rep: Representation) -> Representation:
    """Complement a multi-interval graph on the same tree.

    With integer data, a pair distance avoids every interval exactly
    when it falls in one of the k+1 integer gaps [0, a_1-1],
    [b_j+1, a_{j+1}-1], [b_k+1, mu(T)]; empty gaps are dropped, so at
    most k+1 intervals come back.
    """
    if rep.variant is not Variant.MULTI:
        raise ValueError("complement_multiinterval expects a multi-interval input")
    rep = integerize(rep)
    tree = rep.tree
    ivs = rep.intervals
    if ivs and ivs[0].lo == 0:
        tree, ivs = shift_part(tree, ivs, Fraction(1))
    mu = tree.mu()
    bounds: list[tuple[Fraction, Fraction]] = []
    if not ivs:
        bounds.append((Fraction(0), mu))
    else:
        bounds.append((Fraction(0), ivs[0].lo - 1))
        for left, right in zip(ivs, ivs[1:]):
            bounds.append((left.hi + 1, right.lo - 1))
        bounds.append((ivs[-1].hi + 1, mu))
    gaps = tuple(Interval(lo, hi) for lo, hi in bounds if lo <= hi)
    return multi(tree, gaps)


def interval_count_bound(n: int, m: int) -> int:
    """min(m, ceil((n^2 - n + 2)/4)): intervals sufficient for any
    graph with n vertices and m edges."""
    return min(m, -((n * n - n + 2) // -4))


def graph_to_multiinterval(g: SimpleGraph) -> Representation:
    """A multi-interval representation of an arbitrary graph.

    Base construction: a star whose i-th leaf edge weighs 3^i, so the
    pairwise distances 3^i + 3^j are all distinct; one point interval
    per edge of the graph.  When the complement has fewer edges, the
    complement is represented instead and the gaps are taken, which
    keeps the interval count within interval_count_bound(n, m).
    """
    if g.n == 0:
        raise ValueError("need at least one vertex")
    if g.n == 1:
        label = g.vertices[0]
        aux = "_r" if label != "_r" else "_rr"
        tree = WeightedTree([(label, aux, Fraction(1))], {label: label})
        return multi(tree, ())
    mbar = g.complement().m
    if g.m <= mbar + 1:
        return _star_multiinterval(g)
    return complement_multiinterval(_star_multiinterval(g.complement()))


def _star_multiinterval(g: SimpleGraph) -> Representation:
    weights = {v: Fraction(3) ** i for i, v in enumerate(g.vertices)}
    tree = star_tree(weights)
    sums = sorted(weights[u] + weights[v] for u, v in g.edges)
    return multi(tree, tuple(Interval(s, s) for s in sums))


def split_pcg_and2(tree: WeightedTree, interval: Interval) -> Representation:
    """PCG(T, [a,b]) as the AND of a downward-closed part (T, [0,b])
    and an upward-closed part (T, [a, mu(T)])."""
    return and_pcg([lpg(tree, interval.hi).parts()[0],
                    mlpg(tree, interval.lo).parts()[0]])


def lpg_mlpg_complement(rep: Representation) -> Representation:
    """Complement within the union of the two threshold classes.

    A distance-at-most-d graph's complement keeps pairs with distance
    at least d+1, and vice versa.  The tree is integerized and its
    leaf edges padded by 1 first so every pair distance is a positive
    integer and both directions stay expressible with closed
    intervals (including complete/empty extremes).
    """
    if rep.variant not in (Variant.LPG, Variant.MLPG):
        raise ValueError("expects a distance-threshold representation")
    rep = integerize(rep)
    tree, (iv,) = shift_part(rep.tree, (rep.interval,), Fraction(1))
    if rep.variant is Variant.LPG:
        return mlpg(tree, iv.hi + 1)
    return lpg(tree, iv.lo - 1)


def _part_shape(tree: WeightedTree, iv: Interval) -> str:
    if iv.lo == 0:
        return "lpg"
    if iv.hi >= tree.mu():
        return "mlpg"
    raise ValueError("part is neither downward- nor upward-closed "
                     f"(interval {iv} with mu={tree.mu()})")


def or_and_duality(rep: Representation) -> Representation:
    """De Morgan between unions and intersections of threshold parts.

    Each part must be downward-closed (lo = 0) or upward-closed
    (hi >= mu); the part-wise complement flips the class, and the
    union/intersection flips with it.  Applies in both directions.
    """
    if rep.variant not in (Variant.OR, Variant.AND):
        raise ValueError("or_and_duality expects an OR or AND family")
    flipped = []
    for tree, iv in rep.parts():
        shape = _part_shape(tree, iv)
        part = lpg(tree, iv.hi) if shape == "lpg" else mlpg(tree, iv.lo)
        dual = lpg_mlpg_complement(part)
        flipped.append(dual.parts()[0])
    if rep.variant is Variant.OR:
        return and_pcg(flipped)
    return or_pcg(flipped)


def and_to_or_complement(rep: Representation) -> Representation:
    """Complement an AND family as an OR family with 2k parts.

    Each part (T_i, [a_i, b_i]) splits into its downward and upward
    halves; complementing all 2k halves and switching to a union gives
    the complement graph.
    """
    if rep.variant is not Variant.AND:
        raise ValueError("and_to_or_complement expects an AND family")
    halves = []
    for tree, iv in rep.parts():
        halves.extend(split_pcg_and2(tree, iv).parts())
    doubled = and_pcg(halves)
    return or_and_duality(doubled)
