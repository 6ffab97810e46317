import itertools
import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from enumerate_graphs import all_special_graphs, complete_special_graphs
from orart import InputError
from orart.oraag import (AbelianGroup, CliqueGroup, CliqueGroupElement, Normalizer, RewriteCapExceeded, Word,
                         abelianization, center_clique, embedding_index_check, exactness_class, normalize,
                         presentation, racg_normal_form, racg_projection, rewrite, rewrite_rules, smith_normal_form,
                         verify_hom, word_problem_clique)
from orart.special_graph import SpecialGraph


def klein():
    return SpecialGraph({"a": True, "b": False}, [], [("b", "a")])


def random_word(rng, gens, maxlen):
    return Word([(rng.choice(gens), rng.choice((1, -1))) for _ in range(rng.randint(0, maxlen))])


def test_words():
    w = Word.parse("a b b^-1 c^2")
    assert str(w) == "a c^2" and len(w) == 3
    assert (w * w.inverse()) == Word()
    assert Word.from_json([["a", 2], "b"]) == Word.parse("a^2 b")
    with pytest.raises(InputError):
        Word.parse("a^x")


def test_presentations():
    assert str(presentation(klein())) == "< b, a | a b a^-1 b >"
    G2 = SpecialGraph({"x": False, "y": True, "z": True}, [], [("x", "y"), ("x", "z")])
    assert str(presentation(G2)) == "< x, y, z | y x y^-1 x, z x z^-1 x >"
    assert presentation(SpecialGraph(["p", "q"])).relators == ()


def test_klein_normal_forms():
    G = klein()
    assert str(normalize(G, Word.parse("a b"))) == "b^-1 a"
    assert str(normalize(G, Word.parse("a^2 b^3"))) == "b^3 a^2"
    assert word_problem_clique(G, Word.parse("a b a^-1 b"))
    assert not word_problem_clique(G, Word.parse("a"))


def test_clique_multiplication():
    C = CliqueGroup(klein())
    b, a = C.gen("b"), C.gen("a")
    assert (b * a).coords() == (1, 1) and (a * b).coords() == (-1, 1)
    x = CliqueGroupElement((1,), (2,), 3)
    assert (x * x.inverse()).is_identity() and (x.inverse() * x).is_identity()
    with pytest.raises(InputError):
        x * CliqueGroupElement((), (1,), 0)


@settings(max_examples=100, deadline=None)
@given(st.integers(-5, 5), st.integers(-5, 5))
def test_klein_identity(p, q):
    G = klein()
    lhs = Word([("a", p), ("b", q)])
    rhs = Word([("b", (-1) ** (p % 2) * q), ("a", p)])
    assert normalize(G, lhs) == normalize(G, rhs)


@pytest.mark.parametrize("G,l", list(complete_special_graphs(5)))
def test_normal_form_matches_clique_arithmetic(G, l):
    C = CliqueGroup(G)
    N = Normalizer(G)
    gens = list(G.generator_order())
    rng = random.Random(len(gens) * 10 + l)
    for _ in range(150):
        u = random_word(rng, gens, 20)
        x = C.word_to_clique(u)
        assert C.word_to_clique(C.clique_to_word(x)) == x
        assert N(u) == N(C.clique_to_word(x))
        v = random_word(rng, gens, 20)
        assert C.word_to_clique(u * v) == x * C.word_to_clique(v)
        assert (N(u) == N(v)) == (x == C.word_to_clique(v))


def test_normalize_is_invariant_under_relator_insertion():
    rng = random.Random(9)
    graphs = [G for i, G in enumerate(all_special_graphs(5)) if i % 97 == 0]
    for G in graphs:
        N = Normalizer(G)
        rels = list(presentation(G).relators)
        gens = list(G.generator_order())
        for _ in range(20):
            w = random_word(rng, gens, 12)
            letters = w.letters()
            i = rng.randint(0, len(letters))
            if rels:
                r = rng.choice(rels)
                r = r if rng.random() < 0.5 else r.inverse()
                w2 = Word(letters[:i]) * r * Word(letters[i:])
                assert N(w2) == N(w)
            g = rng.choice(gens)
            w3 = Word(letters[:i] + [(g, 1), (g, -1)] + letters[i:])
            assert N(w3) == N(w)
            assert N(N(w)) == N(w)


def test_rewrite_rules_hold_in_the_group():
    for G, _ in complete_special_graphs(4):
        C = CliqueGroup(G)
        for rule in rewrite_rules(G):
            assert C.word_to_clique(rule.lhs) == C.word_to_clique(rule.rhs), str(rule)
    G = klein()
    rng = random.Random(2)
    for _ in range(100):
        w = random_word(rng, ["a", "b"], 15)
        assert rewrite(G, w) == normalize(G, w)


def test_rewrite_cap():
    with pytest.raises(RewriteCapExceeded):
        rewrite(klein(), Word.parse("a b a b a b a b"), cap=1)


def test_center():
    assert [str(w) for w in center_clique(klein()).words] == ["a^2"]
    assert center_clique(SpecialGraph(["p", "q"], [("p", "q")])).central_generators == ["p", "q"]
    G = SpecialGraph({"w": False, "v1": False, "v2": False, "a": True},
                     [("w", "v1"), ("w", "v2"), ("v1", "v2"), ("w", "a")], [("v1", "a"), ("v2", "a")])
    rep = center_clique(G)
    assert [str(x) for x in rep.words] == ["w", "a^2"]
    assert set(rep.witnesses) == {"v1", "v2", "a"}


def test_smith_normal_form_against_sympy():
    from sympy.matrices.normalforms import smith_normal_form as snf
    rng = random.Random(3)
    for _ in range(200):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        A = [[rng.randint(-6, 6) for _ in range(c)] for _ in range(r)]
        D = snf(sympy.Matrix(A), domain=sympy.ZZ)
        expected = [abs(int(D[i, i])) for i in range(min(r, c)) if D[i, i] != 0]
        assert smith_normal_form(A) == expected


def test_abelianization():
    assert str(abelianization(klein())) == "Z + Z/2"
    G2 = SpecialGraph({"x": False, "y": True, "z": True}, [], [("x", "y"), ("x", "z")])
    # both Klein relators abelianize to 2x, and G2 is isomorphic to G1 = Z^2 + Z/2
    ab = abelianization(G2)
    assert (ab.free_rank, ab.torsion) == (2, [2])
    G1 = SpecialGraph({"a": False, "b": True, "c": False}, [("a", "c")], [("a", "b")])
    assert abelianization(G1) == ab
    assert abelianization(SpecialGraph(["a", "b", "c"])) == AbelianGroup(3, [])


def test_racg():
    assert racg_projection(klein()).order == 4
    assert racg_projection(SpecialGraph(["a"])).order == 2
    G1 = SpecialGraph({"v1": False, "v2": True, "v3": False}, [("v1", "v3")], [("v1", "v2")])
    P = racg_projection(G1)
    assert P.order is None and len(P.presentation.relators) == 3 + 2
    assert racg_normal_form(klein(), Word.parse("a b a")) == Word.parse("b")


def test_hom_verification():
    G1 = SpecialGraph({"a": False, "b": True, "c": False}, [("a", "c")], [("a", "b")])
    G2 = SpecialGraph({"x": False, "y": True, "z": True}, [], [("x", "y"), ("x", "z")])
    good = {"a": Word.parse("x"), "b": Word.parse("y"), "c": Word.parse("z y^-1")}
    assert verify_hom(presentation(G1), good, G2).ok
    bad = {"a": Word.parse("x"), "b": Word.parse("z"), "c": Word.parse("z")}
    r = verify_hom(presentation(G1), bad, G2)
    assert not r.ok and str(r.failing_relator) == "a c a^-1 c^-1"
    assert exactness_class(G2) == "in-star"
    with pytest.raises(InputError):
        verify_hom(presentation(G1), {"a": Word.parse("x")}, G2)


@pytest.mark.parametrize("G,index", [
    (SpecialGraph({"a": True, "b": False}, [], [("b", "a")]), 4),
    (SpecialGraph(["p", "q"], [("p", "q")]), 4),
    (SpecialGraph({"w": False, "v": False, "a": True}, [("w", "v"), ("w", "a")], [("v", "a")]), 8),
])
def test_embedding_index(G, index):
    rep = embedding_index_check(G)
    assert rep.index == index and rep.ok
