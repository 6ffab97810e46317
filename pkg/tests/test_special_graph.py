import itertools
import random

import networkx as nx
import pytest

from enumerate_graphs import naive_graphs
from orart import InputError
from orart.special_graph import (RULES, CliqueTree, NaiveGraph, SpecialGraph, clique_tree, is_chordal, maximal_cliques,
                                 perfect_elimination_ordering, verify_intersection_property)


def gamma1():
    return SpecialGraph({"v1": False, "v2": True, "v3": False}, [("v1", "v3")], [("v1", "v2")])


def brute_force_chordal(adj):
    vs = list(adj)
    for k in range(4, len(vs) + 1):
        for S in itertools.combinations(vs, k):
            H = nx.Graph([(u, w) for u, w in itertools.combinations(S, 2) if w in adj[u]])
            H.add_nodes_from(S)
            if all(H.degree(v) == 2 for v in S) and nx.is_connected(H):
                return False
    return True


def test_gamma1():
    G = gamma1()
    assert G.validate().valid
    assert G.naive().sorted_edges() == [("v1", "v2"), ("v1", "v3")]
    assert G.attractors() == ("v2",)
    assert maximal_cliques(G.naive()) == [("v1", "v2"), ("v1", "v3")]


@pytest.mark.parametrize("G,rule", [
    (SpecialGraph({}), "empty"),
    (SpecialGraph({"a": False}, [("a", "a")]), "loop"),
    (SpecialGraph({"a": False}, [("a", "b")]), "unknown-vertex"),
    (SpecialGraph({"a": False, "b": True}, [("a", "b")], [("a", "b")]), "conflicting-edge"),
    (SpecialGraph({"a": True, "b": True}, [], [("a", "b"), ("b", "a")]), "conflicting-edge"),
    (SpecialGraph({"a": False, "b": False}, [], [("a", "b")]), "special-edge-target"),
    (SpecialGraph({"a": False, "b": True}, [("a", "b")]), "special-vertex-needs-special-edge"),
    (SpecialGraph({"a": False, "b": True, "c": True}, [("b", "c")], [("a", "b"), ("a", "c")]), "clique"),
])
def test_every_rule_has_a_counterexample(G, rule):
    d = G.validate()
    assert not d.valid and d.rule == rule
    with pytest.raises(InputError):
        G.checked()


def test_rules_are_covered():
    assert set(RULES) == {"empty", "loop", "unknown-vertex", "conflicting-edge", "special-edge-target",
                          "special-vertex-needs-special-edge", "clique"}


def test_json_round_trip():
    G = gamma1()
    assert SpecialGraph.from_json(G.to_json()) == G
    with pytest.raises(InputError):
        SpecialGraph.from_json({"vertices": [{"special": True}], "edges": []})


def test_chordality_against_brute_force():
    for H in naive_graphs(7):
        adj = {v: set(H[v]) for v in H}
        G = NaiveGraph(list(H), list(H.edges))
        assert is_chordal(G) == brute_force_chordal(adj), sorted(H.edges)
        assert (perfect_elimination_ordering(G) is not None) == is_chordal(G)


def test_maximal_cliques_match_networkx():
    rng = random.Random(4)
    for _ in range(50):
        H = nx.gnp_random_graph(9, rng.uniform(0.2, 0.8), seed=rng.randrange(10 ** 6))
        G = NaiveGraph(list(H), list(H.edges))
        assert sorted(tuple(sorted(c)) for c in nx.find_cliques(H)) == sorted(G.maximal_cliques())


def test_clique_trees():
    path = NaiveGraph("abc", [("a", "b"), ("b", "c")])
    T = clique_tree(path)
    assert T.nodes == [("a", "b"), ("b", "c")] and T.edges == [(0, 1)]
    rng = random.Random(5)
    for H in naive_graphs(7):
        G = NaiveGraph(list(H), list(H.edges))
        if not is_chordal(G):
            with pytest.raises(InputError):
                clique_tree(G)
            continue
        for seed in (None, rng.randrange(100)):
            T = clique_tree(G, seed=seed)
            assert T.is_tree()
            assert verify_intersection_property(T) is None


def test_verifier_rejects_bad_trees():
    # a-b-c-d path: cliques ab, bc, cd; joining ab to cd directly breaks the property for b or c
    T = CliqueTree([("a", "b"), ("b", "c"), ("c", "d")], [(0, 2), (1, 2)])
    assert verify_intersection_property(T) is not None
