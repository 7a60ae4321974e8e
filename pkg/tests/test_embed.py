import random

import pytest
from hypothesis import given, settings, strategies as st

from _gen import rand_connected_graph
from groebopt.embed import (
    EmbeddingSolution,
    Graph,
    brute_force_embeddings,
    bundle_equations,
    connected_fiber_filter,
    enumerate_embeddings,
    enumerate_embeddings_folded,
    find_automorphisms,
    fold_by_symmetry,
    pullback_equations,
    transposition,
    unfold,
)
from groebopt.polyring import format_poly

X5 = Graph(["x1", "x2", "x3", "x4", "x5"], [("x1", "x2"), ("x2", "x3"), ("x3", "x4"), ("x1", "x4"), ("x4", "x5")])
K3 = Graph(["y1", "y2", "y3"], [("y1", "y2"), ("y1", "y3"), ("y2", "y3")])


def test_equation_counts():
    s = bundle_equations(X5, K3)
    assert len(s.disjointness) == 15
    assert s.ring.arity == 20
    assert bundle_equations(X5, Graph(["y1"])).disjointness == []
    (p,) = pullback_equations(X5, Graph(["y1", "y2"], [("y1", "y2")]))
    assert len(p) == 11  # constant plus ten products
    assert pullback_equations(X5, Graph(["y1", "y2"])) == []


def test_unsatisfiable_edge():
    X = Graph(["x1", "x2"])
    Y = Graph(["y1", "y2"], [("y1", "y2")])
    assert enumerate_embeddings(X, Y) == []


def test_small_counts():
    e = Graph(["x1", "x2"], [("x1", "x2")])
    assert len(enumerate_embeddings(e, Graph(["y1", "y2"], [("y1", "y2")]))) == 2
    assert len(enumerate_embeddings(Graph(["x1"]), Graph(["y1"]))) == 1


def test_example_counts_and_support_ideal():
    run = enumerate_embeddings(X5, K3, full=True)
    assert len(run.solutions) == 48
    assert [format_poly(g) for g in run.support_ideal()] == ["b_5^2 - b_5", "b_4 - 1", "b_3 - 1", "b_2 - 1", "b_1 - 1"]
    assert all(s.check(X5, K3) for s in run.solutions)
    assert [s.key() for s in run.solutions] == [s.key() for s in brute_force_embeddings(X5, K3)]


def test_filter_mode_agrees():
    assert [s.key() for s in enumerate_embeddings(X5, K3, connectivity="filter")] == [
        s.key() for s in enumerate_embeddings(X5, K3)
    ]


def test_connectivity_filter():
    X = Graph(["x5", "x9", "x1"], [("x5", "x9")])
    assert connected_fiber_filter({"y": {"x5", "x9"}}, X)
    assert connected_fiber_filter({"y": {"x5"}, "z": {"x1"}}, X)
    assert not connected_fiber_filter({"y": {"x1", "x3"}}, X5)


def test_automorphisms():
    assert transposition(X5, "x1", "x3") in find_automorphisms(X5)
    assert len(find_automorphisms(K3)) == 6
    assert len(find_automorphisms(Graph(["a", "b", "c"], [("a", "b"), ("b", "c")]))) == 2


def test_fold():
    fold = fold_by_symmetry(X5, transposition(X5, "x1", "x3"))
    assert format_poly(fold.folded_quadratic) == "K*x2 + K*x4 + x4*x5"
    fs, _, sols = enumerate_embeddings_folded(X5, K3, fold, full=True)
    assert fs.ring.arity == 12 and len(sols) == 24
    assert sum(s.multiplicity for s in sols) == 48
    full = sorted({u.key() for s in sols for u in unfold(s, fold)})
    assert full == [s.key() for s in brute_force_embeddings(X5, K3)]
    ident = fold_by_symmetry(X5, tuple(range(5)))
    assert len(enumerate_embeddings_folded(X5, K3, ident)) == 48


def test_split_enumeration_matches_brute_force():
    X = Graph.from_dict({"vertices": [f"x{i}" for i in range(1, 7)],
                         "edges": [["x1", "x2"], ["x1", "x3"], ["x1", "x4"], ["x1", "x5"], ["x1", "x6"], ["x2", "x3"],
                                   ["x2", "x4"], ["x2", "x5"], ["x2", "x6"], ["x3", "x4"], ["x3", "x5"], ["x3", "x6"]]})
    Y = Graph(["y1", "y2", "y3", "y4"], [("y1", "y2"), ("y2", "y3"), ("y2", "y4")])
    run = enumerate_embeddings(X, Y, full=True)
    assert run.gb is None and run.branches > 1
    assert [s.key() for s in run.solutions] == [s.key() for s in brute_force_embeddings(X, Y)]
    with pytest.raises(ValueError):
        run.support_ideal()


def test_graph_json_round_trip():
    assert Graph.from_json(X5.to_json()).edges == X5.edges


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_random_pairs_match_brute_force(seed):
    rng = random.Random(seed)
    X = rand_connected_graph(rng, [f"x{i + 1}" for i in range(rng.randint(2, 5))], 0.5)
    Y = rand_connected_graph(rng, [f"y{i + 1}" for i in range(rng.randint(1, 3))], 0.6)
    got = enumerate_embeddings(X, Y)
    assert [s.key() for s in got] == [s.key() for s in brute_force_embeddings(X, Y)]
    assert all(isinstance(s, EmbeddingSolution) and s.check(X, Y) for s in got)
