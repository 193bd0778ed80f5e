"""Text formats and JSON bundles: parse errors, exact round trips."""

import json
import random
import re
from fractions import Fraction
from itertools import combinations

import pytest

from pcgkit.covers import linear_forest_cover, verify_or_cover
from pcgkit.graphs import SimpleGraph, complete_graph, vertex_labels
from pcgkit.io import (
    cover_from_bundle,
    cover_to_bundle,
    emit_graph,
    emit_tree,
    graph_from_doc,
    graph_to_doc,
    parse_graph,
    parse_tree,
    rep_from_bundle,
    rep_to_bundle,
)
from pcgkit.representations import (
    Interval,
    and_pcg,
    evaluate,
    lpg,
    mlpg,
    multi,
    pcg,
)
from pcgkit.trees import WeightedTree


def random_graph(n: int, p: float, rng: random.Random) -> SimpleGraph:
    vs = vertex_labels(n)
    es = [e for e in combinations(vs, 2) if rng.random() < p]
    return SimpleGraph(vs, es)


# ----- graph text ----------------------------------------------------------


def test_parse_graph_implicit_labels():
    g = parse_graph("n 2\na b\n")
    assert g == SimpleGraph(["a", "b"], [("a", "b")])


def test_parse_graph_declared_isolated_vertices():
    g = parse_graph("n 3\nv a\nv b\nv c\n")
    assert g.n == 3 and g.m == 0


def test_parse_graph_comments_and_blanks():
    text = "# a triangle\nn 3\n\nv a\nv b\nv c\na b\nb c\n# done\na c\n"
    assert parse_graph(text) == complete_graph(["a", "b", "c"])


@pytest.mark.parametrize("text,fragment", [
    ("a b\n", "line 1: expected header"),
    ("n 2\nn 2\na b\n", "line 2: duplicate 'n'"),
    ("n 2\nv a\nv a\n", "line 3: duplicate vertex"),
    ("n 1\na a\n", "line 2: self-loop"),
    ("n 2\na b\nb a\n", "line 3: duplicate edge"),
    ("n 2\nv a\nv b\na c\n", "line 4: unknown label 'c'"),
    ("n 5\na b\n", "vertex count mismatch"),
    ("", "missing 'n <count>' header"),
    ("n 2\na b c\n", "line 2: expected an edge"),
])
def test_parse_graph_errors(text, fragment):
    with pytest.raises(ValueError, match=re.escape(fragment)):
        parse_graph(text)


def test_graph_round_trips():
    rng = random.Random(7219)
    for i in range(25):
        g = random_graph(rng.randint(0, 9), rng.random(), rng)
        text = emit_graph(g)
        assert parse_graph(text) == g
        assert emit_graph(parse_graph(text)) == text


# ----- newick trees --------------------------------------------------------


def test_parse_tree_two_leaves_suppresses_root():
    t = parse_tree("(a:1,b:2);")
    assert t.labels == ("a", "b")
    assert t.distance("a", "b") == 3


def test_parse_tree_star_with_fraction_weights():
    t = parse_tree("(a:1/2,b:3/2,c:1);")
    assert t.distance("a", "b") == 2
    assert t.distance("a", "c") == Fraction(3, 2)


def test_parse_tree_decimal_weights():
    t = parse_tree("(a:0.5,b:1.25,c:1);")
    assert t.distance("a", "b") == Fraction(7, 4)


@pytest.mark.parametrize("text,fragment", [
    ("(a:-1,b:2);", "negative weight"),
    ("(a,b:2);", "every branch needs"),
    ("(a:1,b:2)", "expected ';'"),
    ("(a:1,b:2); junk", "trailing characters"),
    ("(a:1..2,b:2);", "bad weight"),
    ("(a:1;b:2);", "expected ',' or ')'"),
    ("(:1,b:2);", "expected a node"),
])
def test_parse_tree_errors(text, fragment):
    with pytest.raises(ValueError, match=re.escape(fragment)):
        parse_tree(text)


def test_emit_tree_round_trips_exactly():
    star = WeightedTree([("a", "r", 1), ("b", "r", 2),
                         ("c", "r", Fraction(5, 2))])
    assert parse_tree(emit_tree(star), star.label_map()) == star

    relabeled = WeightedTree([("n1", "n2", 2)], {"n1": "alpha", "n2": "beta"})
    back = parse_tree(emit_tree(relabeled), relabeled.label_map())
    assert back == relabeled
    assert back.labels == ("alpha", "beta")


def test_emit_tree_canonical_fixed_point():
    text = emit_tree(parse_tree("(b:2,a:1,(c:1,d:4):1/2);"))
    again = emit_tree(parse_tree(text))
    assert text == again


def test_emit_tree_random_caterpillars():
    rng = random.Random(3307)
    for i in range(15):
        spine = [f"s{j}" for j in range(rng.randint(1, 5))]
        edges = []
        for a, b in zip(spine, spine[1:]):
            edges.append((a, b, Fraction(rng.randint(1, 9),
                                         rng.choice([1, 2, 4]))))
        for j, s in enumerate(spine):
            for leaf in range(rng.randint(1, 3)):
                edges.append((s, f"x{j}_{leaf}",
                              Fraction(rng.randint(1, 9), rng.choice([1, 3]))))
        # keep at least two leaves so the shape is a tree after suppression
        if len(edges) < 2:
            continue
        t = WeightedTree(edges)
        assert parse_tree(emit_tree(t), t.label_map()) == t


def test_emit_tree_rejects_syntax_breaking_names():
    t = WeightedTree([("a(", "b", 1)])
    with pytest.raises(ValueError, match="cannot appear"):
        emit_tree(t)


# ----- bundles --------------------------------------------------------------


def _star(weights) -> WeightedTree:
    return WeightedTree([(lab, "hub", w) for lab, w in weights.items()])


def test_representation_bundles_round_trip_all_variants():
    t1 = _star({"a": 1, "b": 2, "c": Fraction(5, 2)})
    t2 = _star({"a": 2, "b": 1, "c": 1})
    reps = [
        pcg(t1, Interval(2, Fraction(7, 2))),
        lpg(t1, Fraction(3)),
        mlpg(t1, 2),
        multi(t1, [Interval(0, 1), Interval(3, 4)]),
        and_pcg([(t1, Interval(0, 3)), (t2, Interval(1, 2))]),
    ]
    for rep in reps:
        doc = json.loads(json.dumps(rep_to_bundle(rep)))
        back = rep_from_bundle(doc)
        assert back == rep


def test_bundle_verification_field():
    t = _star({"a": 1, "b": 1})
    rep = pcg(t, Interval(0, 3))
    g = evaluate(rep)
    assert rep_to_bundle(rep)["verification"] == "unchecked"
    assert rep_to_bundle(rep, check_against=g)["verification"] == "checked"
    with pytest.raises(RuntimeError, match="does not evaluate"):
        rep_to_bundle(rep, check_against=g.complement())


def test_bundle_rejects_wrong_kind():
    with pytest.raises(ValueError, match="not a representation"):
        rep_from_bundle({"kind": "cover"})
    with pytest.raises(ValueError, match="not a graph"):
        graph_from_doc({"kind": "representation"})
    with pytest.raises(ValueError, match="not a cover"):
        cover_from_bundle({"kind": "graph"})


def test_graph_doc_round_trip():
    g = random_graph(7, 0.4, random.Random(11))
    assert graph_from_doc(json.loads(json.dumps(graph_to_doc(g)))) == g


def test_cover_bundle_round_trip():
    g = SimpleGraph(["a", "b", "c", "d"],
                    [("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")])
    cover = linear_forest_cover(g)
    doc = json.loads(json.dumps(cover_to_bundle(cover,
                                                verify_or_cover(g, cover))))
    back = cover_from_bundle(doc)
    assert back == cover
    assert doc["certificate"]["ok"] is True
