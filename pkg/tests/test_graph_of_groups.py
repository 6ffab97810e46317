import pytest

from orart import InputError
from orart.graph_of_groups import build, canonical_relator, compare_presentations, exact_rows_check, pi1_presentation
from orart.oraag import Presentation, Word, presentation
from orart.special_graph import CliqueTree, SpecialGraph, clique_tree


def gamma1():
    return SpecialGraph({"v1": False, "v2": True, "v3": False}, [("v1", "v3")], [("v1", "v2")])


def test_gamma1_tree_of_groups():
    G = gamma1()
    GG = build(G)
    assert [n.clique for n in GG.nodes] == [("v1", "v2"), ("v1", "v3")]
    assert [e.clique for e in GG.edges] == [("v1",)]
    assert GG.edges[0].presentation.generators == ("v1",)
    P = pi1_presentation(GG)
    assert compare_presentations(P, presentation(G))


def test_path_and_edgeless():
    G = SpecialGraph(["a", "b", "c"], [("a", "b"), ("b", "c")])
    GG = build(G)
    assert [str(n.presentation) for n in GG.nodes] == ["< a, b | a b a^-1 b^-1 >", "< b, c | b c b^-1 c^-1 >"]
    assert compare_presentations(pi1_presentation(GG), presentation(G))
    E = SpecialGraph(["a", "b"])
    GE = build(E)
    assert len(GE.nodes) == 2 and GE.edges[0].clique == ()
    assert compare_presentations(pi1_presentation(GE), presentation(E))


def test_canonical_relators():
    assert canonical_relator(Word.parse("a b a^-1 b^-1")) == canonical_relator(Word.parse("b a b^-1 a^-1"))
    assert canonical_relator(Word.parse("c a b a^-1 b^-1 c^-1")) == canonical_relator(Word.parse("a b a^-1 b^-1"))
    P = Presentation(("a", "b"), (Word.parse("a b a^-1 b^-1"),))
    Q = Presentation(("a", "b"), (Word.parse("b^-1 a b a^-1"),))
    assert compare_presentations(P, Q)
    assert not compare_presentations(P, Presentation(("a", "b"), (Word.parse("a b a^-1 b"),)))


def test_bad_tree_is_rejected():
    G = SpecialGraph(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d")])
    T = CliqueTree([("a", "b"), ("b", "c"), ("c", "d")], [(0, 2), (1, 2)])
    with pytest.raises(InputError):
        build(G, T)


def test_exact_rows():
    G = SpecialGraph({"w": False, "v": False, "a": True, "u": False},
                     [("w", "v"), ("w", "a"), ("u", "w")], [("v", "a")])
    r = exact_rows_check(build(G, clique_tree(G.naive())))
    assert r.ok and "generator-level" in r.note
