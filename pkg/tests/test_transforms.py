"""Representation rewrites: every transform is checked by evaluation."""

import random
from fractions import Fraction

import pytest

from pcgkit.graphs import (SimpleGraph, complete_graph, cycle_graph,
                           empty_graph, vertex_labels)
from pcgkit.representations import (Interval, Variant, and_pcg, evaluate, lpg,
                                    mlpg, multi, or_pcg, pcg)
from pcgkit.transforms import (and_to_or_complement, complement_multiinterval,
                               graph_to_multiinterval, integerize,
                               lpg_mlpg_complement, normalize_single_interval,
                               or_and_duality, split_pcg_and2,
                               interval_count_bound, widen_degenerate)
from pcgkit.trees import WeightedTree, star_tree

from tests.test_trees import random_tree

L = vertex_labels
F = Fraction


def random_interval(rng, tree, allow_degenerate=True):
    dists = sorted(set(tree.all_pair_distances().values()))
    lo = rng.choice(dists)
    highs = [d for d in dists if d >= lo] if allow_degenerate else \
            [d for d in dists if d > lo]
    hi = rng.choice(highs) if highs else lo + 1
    return Interval(lo, hi)


# ----- integerize ---------------------------------------------------------


def test_integerize_scales_to_integers():
    tree = star_tree({"a": F(1, 2), "b": F(3, 2), "c": F(5, 2)})
    rep = integerize(pcg(tree, Interval(1, 2)))
    assert rep.interval == Interval(2, 4)
    assert all(w.denominator == 1 for _, _, w in rep.tree.edge_list())


def test_integerize_identity_on_integers():
    tree = star_tree({"a": F(1), "b": F(3)})
    rep = pcg(tree, Interval(2, 4))
    assert integerize(rep) == rep


def test_integerize_preserves_evaluation():
    rng = random.Random(1333)
    for _ in range(100):
        tree = random_tree(rng, rng.randint(3, 7))
        iv = random_interval(rng, tree)
        rep = pcg(tree, iv)
        out = integerize(rep)
        assert evaluate(out) == evaluate(rep)


def test_integerize_scales_parts_independently():
    t1 = star_tree({"a": F(1, 2), "b": F(1, 2), "c": F(1, 2)})
    t2 = star_tree({"a": F(1, 3), "b": F(2, 3), "c": F(1, 3)})
    rep = or_pcg([(t1, Interval(1, 1)), (t2, Interval(1, 1))])
    out = integerize(rep)
    assert out.intervals[0] == Interval(2, 2)
    assert out.intervals[1] == Interval(3, 3)


# ----- widen_degenerate ---------------------------------------------------


def test_widen_single_edge_example():
    tree = WeightedTree([("a", "b", F(3))], None)
    t2, iv2 = widen_degenerate(tree, Interval(3, 3))
    assert iv2 == Interval(4, 5)
    assert t2.distance("a", "b") == 5
    assert evaluate(pcg(t2, iv2)) == evaluate(pcg(tree, Interval(3, 3)))


def test_widen_star_example():
    tree = star_tree({"a": F(1), "b": F(1), "c": F(2)})
    t2, iv2 = widen_degenerate(tree, Interval(2, 2))
    assert iv2 == Interval(3, 4)
    weights = {lab: t2.weight(t2.node_of(lab), "_c") for lab in t2.labels}
    assert weights == {"a": F(2), "b": F(2), "c": F(3)}
    assert evaluate(pcg(t2, iv2)) == evaluate(pcg(tree, Interval(2, 2)))


def test_widen_handles_distance_just_below_interval():
    # a pair at distance a-1 would land on a+1 under the plain shift,
    # turning a non-edge into an edge; the transform must avoid that.
    tree = star_tree({"a": F(1), "b": F(1), "c": F(2)})
    before = evaluate(pcg(tree, Interval(3, 3)))
    t2, iv2 = widen_degenerate(tree, Interval(3, 3))
    assert evaluate(pcg(t2, iv2)) == before
    assert iv2.lo < iv2.hi


def test_widen_noop_on_positive_length():
    tree = star_tree({"a": F(1), "b": F(2)})
    assert widen_degenerate(tree, Interval(1, 2)) == (tree, Interval(1, 2))


def test_widen_rejects_fractional_weights():
    tree = star_tree({"a": F(1, 2), "b": F(1), "c": F(1)})
    with pytest.raises(ValueError):
        widen_degenerate(tree, Interval(1, 1))


def test_widen_random_roundtrip():
    rng = random.Random(515)
    for _ in range(60):
        n = rng.randint(2, 6)
        weights = {f"x{i}": F(rng.randint(1, 9)) for i in range(n)}
        tree = star_tree(weights)
        a = rng.choice(sorted(tree.all_pair_distances().values()))
        before = evaluate(pcg(tree, Interval(a, a)))
        t2, iv2 = widen_degenerate(tree, Interval(a, a))
        assert iv2.lo < iv2.hi
        assert evaluate(pcg(t2, iv2)) == before


# ----- normalize_single_interval ------------------------------------------


def test_normalize_contract_example_arithmetic():
    # two parts with intervals [1,2] and [3,5]; after the initial
    # doubling: d = (2, 4), D = 8, scaled intervals [8,16] and
    # [12,20], A = 12, pads (2, 0), common interval [12, 20]
    t1 = star_tree({"a": F(1), "b": F(1), "c": F(1)})
    t2 = star_tree({"a": F(2), "b": F(2), "c": F(1)})
    rep = or_pcg([(t1, Interval(1, 2)), (t2, Interval(3, 5))])
    trace = []
    out = normalize_single_interval(rep, trace)
    assert [t["d"] for t in trace] == [F(2), F(4)]
    assert trace[0]["D"] == F(8)
    assert (trace[0]["a_prime"], trace[0]["b_prime"]) == (F(8), F(16))
    assert (trace[1]["a_prime"], trace[1]["b_prime"]) == (F(12), F(20))
    assert trace[0]["A"] == F(12)
    assert [t["pad"] for t in trace] == [F(2), F(0)]
    assert set(out.intervals) == {Interval(12, 20)}
    assert evaluate(out) == evaluate(rep)


def test_normalize_k1_is_scaling_only():
    tree = star_tree({"a": F(1), "b": F(2), "c": F(3)})
    rep = and_pcg([(tree, Interval(2, 4))])
    out = normalize_single_interval(rep)
    assert len(out.intervals) == 1
    assert evaluate(out) == evaluate(rep)


def test_normalize_random_roundtrip():
    rng = random.Random(60494)
    for _ in range(60):
        k = rng.randint(1, 3)
        variant = rng.choice([or_pcg, and_pcg])
        labels = [f"x{i}" for i in range(rng.randint(3, 6))]
        parts = []
        for _ in range(k):
            tree = random_tree(rng, len(labels), labels=labels)
            parts.append((tree, random_interval(rng, tree)))
        rep = variant(parts)
        out = normalize_single_interval(rep)
        assert len(set(out.intervals)) == 1
        assert out.variant == rep.variant
        assert evaluate(out) == evaluate(rep)


def test_normalize_rejects_single_tree_variants():
    tree = star_tree({"a": F(1), "b": F(2)})
    with pytest.raises(ValueError):
        normalize_single_interval(pcg(tree, Interval(1, 2)))


# ----- complement_multiinterval -------------------------------------------


def test_complement_single_edge_example():
    tree = WeightedTree([("a", "b", F(2))], None)
    rep = multi(tree, (Interval(3, 4),))
    out = complement_multiinterval(rep)
    assert evaluate(out) == SimpleGraph(["a", "b"], [("a", "b")])
    assert out.intervals[0].lo == 0


def test_complement_of_full_coverage_is_empty():
    tree = star_tree({"a": F(1), "b": F(1), "c": F(2)})
    # distances are 2, 3, 3: [0, mu] covers every pair
    rep = multi(tree, (Interval(0, 3),))
    out = complement_multiinterval(rep)
    assert evaluate(out) == empty_graph(["a", "b", "c"])
    assert all(iv.lo <= iv.hi for iv in out.intervals)


def test_complement_drops_empty_gaps():
    tree = star_tree({"a": F(2), "b": F(2), "c": F(3)})
    # distances 4, 5, 5; adjacent intervals leave a hollow gap [5, 4]
    rep = multi(tree, (Interval(1, 4), Interval(5, 9)))
    out = complement_multiinterval(rep)
    assert evaluate(out) == evaluate(rep).complement()
    assert len(out.intervals) <= 2  # the middle gap vanished


def test_complement_of_empty_interval_set_is_complete():
    tree = star_tree({"a": F(1), "b": F(1), "c": F(2)})
    rep = multi(tree, ())
    out = complement_multiinterval(rep)
    assert evaluate(out) == complete_graph(["a", "b", "c"])


def test_complement_pads_when_interval_starts_at_zero():
    tree = star_tree({"a": F(0), "b": F(0), "c": F(2)})
    rep = multi(tree, (Interval(0, 1),))
    out = complement_multiinterval(rep)
    assert evaluate(out) == evaluate(rep).complement()


def test_complement_random_roundtrip():
    rng = random.Random(7321)
    for _ in range(100):
        tree = random_tree(rng, rng.randint(3, 7))
        span = int(tree.mu()) + 4
        k = rng.randint(1, 3)
        points = sorted(rng.sample(range(0, span + 2 * k + 2), 2 * k))
        ivs = tuple(Interval(points[2 * i], points[2 * i + 1]) for i in range(k))
        rep = multi(tree, ivs)
        out = complement_multiinterval(rep)
        assert evaluate(out) == evaluate(rep).complement()
        assert all(x.hi < y.lo for x, y in zip(out.intervals, out.intervals[1:]))


# ----- graph_to_multiinterval ---------------------------------------------


def test_bound_formula_examples():
    assert interval_count_bound(5, 5) == 5
    assert interval_count_bound(5, 9) == 6
    assert interval_count_bound(4, 0) == 0


def test_cycle_uses_one_interval_per_edge():
    g = cycle_graph(L(5))
    rep = graph_to_multiinterval(g)
    assert len(rep.intervals) == 5
    assert evaluate(rep) == g


def test_dense_graph_takes_the_complement_route():
    g = complete_graph(L(5))
    e = g.sorted_edges()[0]
    g = SimpleGraph(g.vertices, [x for x in g.edges if x != e])
    rep = graph_to_multiinterval(g)
    assert len(rep.intervals) <= interval_count_bound(5, 9)
    assert evaluate(rep) == g


def test_empty_graph_needs_no_intervals():
    g = empty_graph(L(4))
    rep = graph_to_multiinterval(g)
    assert rep.intervals == ()
    assert evaluate(rep) == g


def test_single_vertex_gets_intervalless_rep():
    g = SimpleGraph(["v"])
    rep = graph_to_multiinterval(g)
    assert rep.intervals == ()
    assert evaluate(rep) == g


def test_empty_graph_rejected():
    with pytest.raises(ValueError):
        graph_to_multiinterval(SimpleGraph([]))


def test_random_graphs_within_bound():
    rng = random.Random(888)
    for _ in range(100):
        n = rng.randint(2, 8)
        vs = L(n)
        edges = [(u, v) for i, u in enumerate(vs) for v in vs[i + 1:]
                 if rng.random() < rng.random()]
        g = SimpleGraph(vs, edges)
        rep = graph_to_multiinterval(g)
        assert evaluate(rep) == g
        assert len(rep.intervals) <= interval_count_bound(g.n, g.m)


# ----- split / threshold complement / duality ------------------------------


def test_split_reproduces_interval():
    rng = random.Random(3141)
    for _ in range(40):
        tree = random_tree(rng, rng.randint(3, 8))
        iv = random_interval(rng, tree)
        out = split_pcg_and2(tree, iv)
        assert out.variant is Variant.AND
        assert len(out.parts()) == 2
        assert out.intervals[0].lo == 0
        assert evaluate(out) == evaluate(pcg(tree, iv))


def test_split_full_interval_gives_complete_parts():
    tree = star_tree({"a": F(1), "b": F(2), "c": F(3)})
    out = split_pcg_and2(tree, Interval(0, tree.mu()))
    assert evaluate(out) == complete_graph(["a", "b", "c"])


def test_split_zero_lower_endpoint():
    tree = star_tree({"a": F(1), "b": F(2), "c": F(3)})
    out = split_pcg_and2(tree, Interval(0, 3))
    lpg_part = pcg(out.trees[0], out.intervals[0])
    assert evaluate(lpg_part) == evaluate(pcg(tree, Interval(0, 3)))
    mlpg_part = pcg(out.trees[1], out.intervals[1])
    assert evaluate(mlpg_part) == complete_graph(["a", "b", "c"])


def test_lpg_mlpg_complement_both_directions():
    tree = star_tree({"a": F(1), "b": F(2), "c": F(3), "d": F(5)})
    for rep in (lpg(tree, 4), mlpg(tree, 4)):
        out = lpg_mlpg_complement(rep)
        assert out.variant is not rep.variant
        assert evaluate(out) == evaluate(rep).complement()


def test_lpg_complement_of_everything_is_empty():
    tree = star_tree({"a": F(1), "b": F(2)})
    rep = lpg(tree, tree.mu())  # complete graph
    out = lpg_mlpg_complement(rep)
    assert evaluate(out) == empty_graph(["a", "b"])


def test_mlpg_complement_with_zero_lower_endpoint():
    tree = star_tree({"a": F(0), "b": F(0), "c": F(1)})
    rep = mlpg(tree, 0)  # complete graph, with zero-distance pairs
    out = lpg_mlpg_complement(rep)
    assert evaluate(out) == empty_graph(["a", "b", "c"])


def test_lpg_complement_random():
    rng = random.Random(2718)
    for _ in range(100):
        tree = random_tree(rng, rng.randint(3, 7))
        d = rng.choice(sorted(tree.all_pair_distances().values()))
        rep = lpg(tree, d)
        out = lpg_mlpg_complement(rep)
        assert evaluate(out) == evaluate(rep).complement()


def test_duality_k1_reduces_to_threshold_complement():
    tree = star_tree({"a": F(1), "b": F(2), "c": F(4)})
    rep = or_pcg([lpg(tree, 3).parts()[0]])
    out = or_and_duality(rep)
    assert out.variant is Variant.AND
    assert evaluate(out) == evaluate(rep).complement()


def test_duality_de_morgan_random():
    rng = random.Random(11235)
    for _ in range(60):
        labels = [f"x{i}" for i in range(rng.randint(3, 6))]
        parts = []
        for _ in range(rng.randint(1, 3)):
            tree = random_tree(rng, len(labels), labels=labels)
            if rng.random() < 0.5:
                parts.append(lpg(tree, random_interval(rng, tree).hi).parts()[0])
            else:
                parts.append(mlpg(tree, random_interval(rng, tree).lo).parts()[0])
        rep = or_pcg(parts)
        dual = or_and_duality(rep)
        assert evaluate(dual) == evaluate(rep).complement()
        back = or_and_duality(dual)
        assert evaluate(back) == evaluate(rep)


def test_duality_rejects_middle_intervals():
    tree = star_tree({"a": F(1), "b": F(2), "c": F(4)})
    rep = or_pcg([(tree, Interval(2, 3))])  # neither lo=0 nor hi>=mu
    with pytest.raises(ValueError):
        or_and_duality(rep)


def test_and_to_or_complement_part_count_and_graph():
    rng = random.Random(5550)
    for _ in range(40):
        labels = [f"x{i}" for i in range(rng.randint(3, 6))]
        k = rng.randint(1, 3)
        parts = []
        for _ in range(k):
            tree = random_tree(rng, len(labels), labels=labels)
            parts.append((tree, random_interval(rng, tree)))
        rep = and_pcg(parts)
        out = and_to_or_complement(rep)
        assert out.variant is Variant.OR
        assert len(out.parts()) == 2 * k
        assert evaluate(out) == evaluate(rep).complement()


def test_and_to_or_complete_input():
    tree = star_tree({"a": F(1), "b": F(1), "c": F(1)})
    rep = and_pcg([(tree, Interval(0, 2))])
    out = and_to_or_complement(rep)
    assert evaluate(out) == empty_graph(["a", "b", "c"])
