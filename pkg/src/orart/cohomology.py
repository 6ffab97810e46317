"""Commutative F_2-algebras presented by quadratic relations.

Degree-d monomials are multisets of generators, stored as sorted index
tuples and ordered degrevlex.  The degree-d slice of the ideal is spanned
by monomial multiples of the relations; its rank comes from Gaussian
elimination on Python integers used as bitsets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Hashable, Iterable, Sequence

from ._util import InputError, sort_key
from .cliques import clique_counts
from .special_graph import SpecialGraph

Monomial = tuple  # sorted generator indices
Poly = frozenset  # set of monomials (coefficients in F_2)


def _degrevlex(m: Monomial, n: int):
    # exponent vector compared reverse-lexicographically, larger first
    exps = [0] * n
    for i in m:
        exps[i] += 1
    return (len(m), tuple(-e for e in reversed(exps)))


@lru_cache(maxsize=None)
def monomials(n: int, d: int) -> tuple[Monomial, ...]:
    ms = list(itertools.combinations_with_replacement(range(n), d))
    ms.sort(key=lambda m: _degrevlex(m, n), reverse=True)
    return tuple(ms)


def _mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(sorted(a + b))


def rank_f2(rows: Iterable[int]) -> int:
    """Rank over F_2 of integers read as bit vectors."""
    pivots: dict[int, int] = {}
    r = 0
    for v in rows:
        while v:
            h = v.bit_length() - 1
            if h in pivots:
                v ^= pivots[h]
            else:
                pivots[h] = v
                r += 1
                break
    return r


class QuadAlgebraF2:
    """F_2[generators] / (relations), all relations homogeneous of degree 2."""

    def __init__(self, generators: Sequence[Hashable], relations: Iterable[Iterable[Sequence[Hashable]]] = ()):
        self.generators = tuple(generators)
        if len(set(self.generators)) != len(self.generators):
            raise InputError("duplicate generators")
        self.index = {g: i for i, g in enumerate(self.generators)}
        rels = []
        for rel in relations:
            poly = set()
            for mono in rel:
                mono = tuple(mono)
                if len(mono) != 2:
                    raise InputError(f"relation term {mono} is not of degree 2")
                try:
                    m = tuple(sorted(self.index[g] for g in mono))
                except KeyError as exc:
                    raise InputError(f"unknown generator {exc}") from exc
                poly ^= {m}
            if poly:
                p = frozenset(poly)
                if p not in rels:
                    rels.append(p)
        self.relations: tuple[Poly, ...] = tuple(rels)

    @classmethod
    def from_json(cls, data: dict) -> "QuadAlgebraF2":
        return cls(data["generators"], data.get("relations", []))

    def to_json(self) -> dict:
        return {"generators": list(self.generators), "relations": self.relations_named()}

    def relations_named(self) -> list[list[list]]:
        out = []
        for p in self.relations:
            terms = sorted(p, key=lambda m: _degrevlex(m, len(self.generators)), reverse=True)
            out.append([[self.generators[i] for i in m] for m in terms])
        return out

    def relation_strings(self) -> list[str]:
        def mono(ts):
            a, b = ts
            return f"{a}^2" if a == b else f"{a}{b}" if len(str(a)) == 1 == len(str(b)) else f"{a}*{b}"
        return [" + ".join(mono(t) for t in rel) for rel in self.relations_named()]

    def __repr__(self):
        return f"QuadAlgebraF2({list(self.generators)}, {self.relation_strings()})"

    def ideal_slice(self, d: int) -> list[int]:
        """Degree-d part of the ideal as bit vectors over the degree-d monomial basis."""
        n = len(self.generators)
        if d < 2:
            return []
        basis = {m: i for i, m in enumerate(monomials(n, d))}
        rows = []
        for mult in monomials(n, d - 2):
            for rel in self.relations:
                v = 0
                for t in rel:
                    v ^= 1 << basis[_mul(mult, t)]
                rows.append(v)
        return rows

    def hilbert_dims(self, maxdeg: int) -> list[int]:
        return hilbert_dims(self, maxdeg)

    def renamed(self, mapping) -> "QuadAlgebraF2":
        return QuadAlgebraF2([mapping.get(g, g) for g in self.generators], [
            [[mapping.get(g, g) for g in t] for t in rel] for rel in self.relations_named()])


def hilbert_dims(A: QuadAlgebraF2, maxdeg: int) -> list[int]:
    if maxdeg < 0:
        raise InputError("maxdeg must be nonnegative")
    n = len(A.generators)
    return [len(monomials(n, d)) - rank_f2(A.ideal_slice(d)) for d in range(maxdeg + 1)]


def build_gamma_algebra(G: SpecialGraph) -> QuadAlgebraF2:
    """The quadratic algebra of a special graph.

    1. v^2 when v starts no special edge;
    2. v w + w^2 for each special edge (w, v);
    3. v w for each non-adjacent pair;
    4. v v' + w v' for non-adjacent v, w and each v' with (v', v) special and (v', w) an edge.
    """
    G.checked()
    gens = G.generator_order()
    E = G.oriented_edges()
    adj = G.naive().adj
    origins = {o for o, _ in G.special_edges}
    rels: list = []
    for v in gens:
        if v not in origins:
            rels.append([(v, v)])
    for w, v in G.sorted_special_edges():
        rels.append([(v, w), (w, w)])
    for v, w in itertools.combinations(gens, 2):
        if w not in adj[v]:
            rels.append([(v, w)])
    for v, w in itertools.permutations(gens, 2):
        if w in adj[v]:
            continue
        for vp in gens:
            if (vp, v) in G.special_edges and (vp, w) in E:
                rels.append([(v, vp), (w, vp)])
    return QuadAlgebraF2(gens, rels)


def exterior(generators: Sequence[Hashable] | int, prefix: str = "W") -> QuadAlgebraF2:
    """F_2[x_1..x_n]/(x_i^2); cohomology of the n-torus."""
    if isinstance(generators, int):
        generators = [f"{prefix}{i}" for i in range(1, generators + 1)]
    return QuadAlgebraF2(generators, [[(g, g)] for g in generators])


def klein_ring(m: int) -> QuadAlgebraF2:
    """F_2[R, V_1..V_m]/(R^2, V_i^2 + R V_i): mod-2 cohomology of the (m+1)-dimensional Klein bottle."""
    if m < 1:
        raise InputError("klein_ring needs m >= 1")
    gens = ["R"] + [f"V{i}" for i in range(1, m + 1)]
    rels = [[("R", "R")]] + [[(v, v), ("R", v)] for v in gens[1:]]
    return QuadAlgebraF2(gens, rels)


def kml_ring(m: int, l: int) -> QuadAlgebraF2:
    """F_2[R, V_1..V_l, W_1..W_{m-l-1}]/(R^2, V_i^2 + R V_i, W_j^2)."""
    if not 0 <= l <= m - 1:
        raise InputError("kml_ring needs 0 <= l <= m-1")
    vs = [f"V{i}" for i in range(1, l + 1)]
    ws = [f"W{j}" for j in range(1, m - l)]
    rels = [[("R", "R")]] + [[(v, v), ("R", v)] for v in vs] + [[(w, w)] for w in ws]
    return QuadAlgebraF2(["R"] + vs + ws, rels)


def tensor(A: QuadAlgebraF2, B: QuadAlgebraF2) -> QuadAlgebraF2:
    clash = set(A.generators) & set(B.generators)
    if clash:
        raise InputError(f"tensor factors share generators {sorted(clash, key=sort_key)}")
    return QuadAlgebraF2(A.generators + B.generators, A.relations_named() + B.relations_named())


def convolve(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def ideal_equal(A: QuadAlgebraF2, B: QuadAlgebraF2, maxdeg: int = 4) -> bool:
    """Degreewise equality of the two ideals (same generator names required)."""
    if set(A.generators) != set(B.generators):
        raise InputError("ideal_equal needs the same generator set")
    B2 = QuadAlgebraF2(A.generators, B.relations_named())
    for d in range(2, maxdeg + 1):
        ra, rb = A.ideal_slice(d), B2.ideal_slice(d)
        r = rank_f2(ra)
        if r != rank_f2(rb) or r != rank_f2(ra + rb):
            return False
    return True


@dataclass
class ConjectureReport:
    algebra_dims: list[int]
    clique_counts: list[int]
    per_degree: list[bool]
    rule4_multiplicity: dict = field(default_factory=dict)
    label: str = "evidence only: compares algebra dimensions with clique counts, not a proof"

    @property
    def match(self) -> bool:
        return all(self.per_degree)

    def to_json(self):
        return {
            "label": self.label,
            "algebra_dims": self.algebra_dims,
            "clique_counts": self.clique_counts,
            "per_degree_match": self.per_degree,
            "match": self.match,
            "rule4_multiple_witnesses": {f"{v},{w}": c for (v, w), c in self.rule4_multiplicity.items()},
        }


def conjecture_probe(G: SpecialGraph, maxdeg: int | None = None) -> ConjectureReport:
    """Compare dims of the graph algebra with clique counts of the naive graph.

    The clique counts are the mod-2 Betti numbers of the Klein-Salvetti
    complex only under the assumption that its mod-2 boundaries vanish.
    """
    A = build_gamma_algebra(G)
    cc = clique_counts(G.naive().adj)
    if maxdeg is None:
        maxdeg = len(cc)
    dims = hilbert_dims(A, maxdeg)
    cc = (cc + [0] * (maxdeg + 1))[: maxdeg + 1]
    mult = {}
    adj = G.naive().adj
    E = G.oriented_edges()
    for v, w in itertools.permutations(G.vertices, 2):
        if w in adj[v]:
            continue
        c = sum(1 for vp in G.vertices if (vp, v) in G.special_edges and (vp, w) in E)
        if c > 1:
            mult[(v, w)] = c
    return ConjectureReport(dims, cc, [a == b for a, b in zip(dims, cc)], mult)
