import itertools
import random

import pytest
import sympy

from enumerate_graphs import complete_special_graphs
from orart import InputError
from orart.cliques import clique_counts
from orart.cohomology import (QuadAlgebraF2, build_gamma_algebra, conjecture_probe, convolve, exterior, hilbert_dims,
                              ideal_equal, klein_ring, kml_ring, monomials, rank_f2, tensor)
from orart.special_graph import SpecialGraph


def gamma1():
    return SpecialGraph({"v1": False, "v2": True, "v3": False}, [("v1", "v3")], [("v1", "v2")])


def groebner_dims(A, maxdeg):
    """Count standard monomials of a Groebner basis over GF(2)."""
    syms = sympy.symbols(" ".join(f"g{i}" for i in range(len(A.generators))))
    syms = syms if isinstance(syms, tuple) else (syms,)
    polys = [sum(sympy.Mul(*[syms[i] for i in m]) for m in rel) for rel in A.relations]
    if not polys:
        return [len(monomials(len(syms), d)) for d in range(maxdeg + 1)]
    GB = sympy.groebner(polys, *syms, modulus=2, order="grevlex")
    leads = [sympy.Poly(g, *syms, modulus=2).monoms(order="grevlex")[0] for g in GB.exprs]
    dims = []
    for d in range(maxdeg + 1):
        count = 0
        for m in monomials(len(syms), d):
            e = [m.count(i) for i in range(len(syms))]
            if not any(all(e[i] >= l[i] for i in range(len(syms))) for l in leads):
                count += 1
        dims.append(count)
    return dims


def test_rank():
    assert rank_f2([0b011, 0b110, 0b101]) == 2
    assert rank_f2([]) == 0


def test_klein_ring():
    assert hilbert_dims(klein_ring(1), 3) == [1, 2, 1, 0]
    assert klein_ring(1).relation_strings() == ["R^2", "R*V1 + V1^2"]


def test_gamma1_relations():
    A = build_gamma_algebra(gamma1()).renamed({"v2": "x", "v1": "y", "v3": "z"})
    expected = QuadAlgebraF2(["x", "y", "z"], [[("x", "x")], [("z", "z")], [("x", "z")],
                                               [("x", "y"), ("y", "y")], [("x", "y"), ("z", "y")]])
    assert ideal_equal(A, expected)


def test_hilbert_against_groebner():
    rng = random.Random(12)
    for _ in range(25):
        n = rng.randint(1, 4)
        gens = [f"x{i}" for i in range(n)]
        quad = list(itertools.combinations_with_replacement(gens, 2))
        rels = [rng.sample(quad, rng.randint(1, min(3, len(quad)))) for _ in range(rng.randint(0, 4))]
        A = QuadAlgebraF2(gens, rels)
        assert hilbert_dims(A, 4) == groebner_dims(A, 4), A


def test_kunneth():
    for A, B in [(klein_ring(1), exterior(1)), (exterior(2), klein_ring(2)), (exterior(1), exterior(["Y"]))]:
        assert hilbert_dims(tensor(A, B), 6) == convolve(hilbert_dims(A, 6), hilbert_dims(B, 6))[:7]
    with pytest.raises(InputError):
        tensor(exterior(1), exterior(1))


@pytest.mark.parametrize("m,l", [(m, l) for m in range(1, 6) for l in range(0, m)])
def test_kml_ring_is_a_tensor_product(m, l):
    first = klein_ring(l) if l else exterior(["R"])
    assert hilbert_dims(kml_ring(m, l), m + 1) == hilbert_dims(tensor(first, exterior(m - l - 1)), m + 1)


@pytest.mark.parametrize("G,l", list(complete_special_graphs(5)))
def test_complete_graphs_match(G, l):
    n = len(G.vertices)
    dims = hilbert_dims(build_gamma_algebra(G), n + 1)
    assert dims == hilbert_dims(kml_ring(n, l), n + 1) == clique_counts(G.naive().adj) + [0]
    assert conjecture_probe(G).match


def test_probe_reports_gamma1_mismatch():
    r = conjecture_probe(gamma1(), 3)
    assert r.algebra_dims == [1, 3, 1, 0] and r.clique_counts == [1, 3, 2, 0]
    assert r.per_degree == [True, True, False, True] and "evidence" in r.label


def test_edgeless():
    G = SpecialGraph(["a", "b", "c"])
    r = conjecture_probe(G, 3)
    assert r.algebra_dims == r.clique_counts == [1, 3, 0, 0]


def test_json_round_trip():
    A = klein_ring(2)
    B = QuadAlgebraF2.from_json(A.to_json())
    assert ideal_equal(A, B)
    with pytest.raises(InputError):
        QuadAlgebraF2(["x"], [[("x",)]])
