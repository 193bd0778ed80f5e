"""Evaluation semantics for every representation variant."""

import random
from fractions import Fraction

import pytest

from pcgkit.graphs import SimpleGraph, complete_graph, empty_graph
from pcgkit.representations import (Interval, Representation, Variant,
                                    and_pcg, evaluate, lpg, mlpg, multi,
                                    or_pcg, pcg)
from pcgkit.trees import WeightedTree, star_tree

from test_trees import random_tree


def test_interval_validation():
    with pytest.raises(ValueError):
        Interval(3, 2)
    with pytest.raises(ValueError):
        Interval(-1, 2)
    iv = Interval(Fraction(1, 2), 2)
    assert iv.contains(Fraction(1, 2)) and iv.contains(2)
    assert not iv.contains(Fraction(49, 100))
    assert iv.length() == Fraction(3, 2)


def test_multi_requires_disjoint_sorted():
    t = star_tree({"a": 1, "b": 2})
    with pytest.raises(ValueError):
        multi(t, [Interval(0, 2), Interval(2, 3)])
    with pytest.raises(ValueError):
        multi(t, [Interval(4, 5), Interval(0, 1)])
    ok = multi(t, [Interval(0, 1), Interval(3, 4)])
    assert evaluate(ok) == complete_graph(["a", "b"])


def test_pcg_membership_boundaries():
    # closed interval: both endpoints are edges
    t = star_tree({"a": 1, "b": 2, "c": 4})
    # distances: ab=3, ac=5, bc=6
    rep = pcg(t, Interval(3, 5))
    g = evaluate(rep)
    assert g.has_edge("a", "b") and g.has_edge("a", "c")
    assert not g.has_edge("b", "c")


def test_exact_rational_membership():
    t = star_tree({"a": Fraction(1, 3), "b": Fraction(2, 3)})
    assert evaluate(pcg(t, Interval(1, 1))).m == 1
    assert evaluate(pcg(t, Interval(Fraction(999, 1000), Fraction(9999, 10000)))).m == 0


def test_lpg_requires_zero_start():
    t = star_tree({"a": 1, "b": 2})
    with pytest.raises(ValueError):
        Representation(Variant.LPG, (t,), (Interval(1, 2),))
    assert evaluate(lpg(t, 3)).m == 1


def test_mlpg_interval_reaches_mu():
    t = star_tree({"a": 1, "b": 2, "c": 4})
    rep = mlpg(t, 5)
    assert rep.interval == Interval(5, 6)
    g = evaluate(rep)
    assert g.sorted_edges() == [("a", "c"), ("b", "c")]
    # threshold above every distance denotes the empty graph
    assert evaluate(mlpg(t, 100)) == empty_graph(["a", "b", "c"])


def test_or_and_semantics():
    t1 = star_tree({"a": 1, "b": 1, "c": 5})   # ab=2, ac=6, bc=6
    t2 = star_tree({"a": 5, "b": 1, "c": 1})   # ab=6, ac=6, bc=2
    iv = Interval(2, 2)
    union = evaluate(or_pcg([(t1, iv), (t2, iv)]))
    inter = evaluate(and_pcg([(t1, iv), (t2, iv)]))
    assert union.sorted_edges() == [("a", "b"), ("b", "c")]
    assert inter.m == 0


def test_or_and_part_order_irrelevant():
    rng = random.Random(31)
    for _ in range(10):
        t1 = random_tree(rng, 5)
        t2 = random_tree(rng, 5)
        i1 = Interval(1, 3)
        i2 = Interval(2, 5)
        assert (evaluate(or_pcg([(t1, i1), (t2, i2)]))
                == evaluate(or_pcg([(t2, i2), (t1, i1)])))
        assert (evaluate(and_pcg([(t1, i1), (t2, i2)]))
                == evaluate(and_pcg([(t2, i2), (t1, i1)])))


def test_multi_with_single_interval_matches_pcg():
    rng = random.Random(37)
    for _ in range(10):
        t = random_tree(rng, rng.randint(2, 7))
        iv = Interval(1, Fraction(7, 2))
        assert evaluate(multi(t, [iv])) == evaluate(pcg(t, iv))


def test_multi_union_of_intervals():
    t = star_tree({"a": 1, "b": 2, "c": 4})  # ab=3 ac=5 bc=6
    rep = multi(t, [Interval(3, 3), Interval(6, 7)])
    g = evaluate(rep)
    assert g.sorted_edges() == [("a", "b"), ("b", "c")]


def test_trees_must_share_labels():
    t1 = star_tree({"a": 1, "b": 2})
    t2 = star_tree({"a": 1, "c": 2})
    with pytest.raises(ValueError):
        or_pcg([(t1, Interval(0, 1)), (t2, Interval(0, 1))])


def test_and_of_split_parts_reproduces_pcg():
    """AND of the [0,b] part and the [a,mu] part equals PCG(T,[a,b])."""
    rng = random.Random(41)
    for _ in range(25):
        t = random_tree(rng, rng.randint(3, 7))
        m = t.mu()
        a = Fraction(rng.randint(0, int(m) + 1), rng.randint(1, 3))
        b = a + Fraction(rng.randint(0, int(m) + 1), rng.randint(1, 3))
        whole = evaluate(pcg(t, Interval(a, b)))
        low = (t, Interval(0, b))
        upper_hi = m if m >= a else a
        high = (t, Interval(a, upper_hi))
        assert evaluate(and_pcg([low, high])) == whole
