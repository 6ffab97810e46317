"""Simplicial and cubical complexes, flag tests and Gromov's link criterion.

Cube cells are tuples of 2^d vertex ids in binary-coordinate order: the
vertex with coordinates (x_0, ..., x_{d-1}) in {0,1}^d sits at index
sum x_j 2^j.  So a square (a, b, c, d) has edges ab, cd (along x_0) and ac,
bd (along x_1), and its diagonal pairs are ad and bc.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Hashable, Iterable, Sequence

from ._util import InputError, sort_key, sorted_ids
from .cliques import adjacency, maximal_cliques


def _sorted_tuple(s) -> tuple:
    return tuple(sorted(s, key=sort_key))


def _tuple_key(t: tuple):
    return (len(t), [sort_key(x) for x in t])


class SimplicialComplex:
    """Finite abstract simplicial complex (the empty simplex is implicit)."""

    def __init__(self, simplices: Iterable[Iterable[Hashable]], vertices: Iterable[Hashable] | None = None):
        simps = {frozenset(s) for s in simplices}
        simps.discard(frozenset())
        verts = set().union(*simps) if simps else set()
        if vertices is not None:
            extra = set(vertices)
            verts |= extra
            simps |= {frozenset([v]) for v in extra}
        for s in simps:
            if len(s) > 1:
                for v in s:
                    if s - {v} not in simps:
                        raise InputError(f"not downward closed: {_sorted_tuple(s)} lacks face {_sorted_tuple(s - {v})}")
            elif len(s) == 1 and s not in simps:
                raise InputError("missing vertex")
        self.simplices = frozenset(simps)
        self.vertices = tuple(sorted_ids(verts))

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[Hashable]], vertices=None) -> "SimplicialComplex":
        simps = set()
        for f in facets:
            f = list(f)
            for k in range(1, len(f) + 1):
                simps.update(frozenset(c) for c in itertools.combinations(f, k))
        return cls(simps, vertices)

    @classmethod
    def from_json(cls, data: dict) -> "SimplicialComplex":
        verts = data.get("vertices")
        if "facets" in data:
            return cls.from_facets(data["facets"], verts)
        if "simplices" in data:
            return cls(data["simplices"], verts)
        raise InputError("complex JSON needs 'simplices' or 'facets'")

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "simplices": [list(s) for s in self.sorted_simplices()]}

    def sorted_simplices(self) -> list[tuple]:
        return sorted((_sorted_tuple(s) for s in self.simplices), key=_tuple_key)

    def facets(self) -> list[tuple]:
        out = [s for s in self.simplices if not any(s < t for t in self.simplices if len(t) == len(s) + 1)]
        return sorted((_sorted_tuple(s) for s in out), key=_tuple_key)

    @property
    def dim(self) -> int:
        return max((len(s) for s in self.simplices), default=0) - 1

    def __contains__(self, s) -> bool:
        return frozenset(s) in self.simplices

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.simplices == other.simplices and set(self.vertices) == set(other.vertices)

    def __hash__(self):
        return hash(self.simplices)

    def __repr__(self):
        return f"SimplicialComplex(facets={self.facets()})"

    def one_skeleton(self) -> dict:
        return adjacency(self.vertices, (tuple(s) for s in self.simplices if len(s) == 2))

    def f_vector(self) -> list[int]:
        f = [0] * (self.dim + 1)
        for s in self.simplices:
            f[len(s) - 1] += 1
        return f


@dataclass
class FlagResult:
    flag: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.flag

    def to_json(self):
        return {"flag": self.flag, "witness": None if self.witness is None else list(self.witness)}


def _minimal_missing_face(L: SimplicialComplex) -> tuple | None:
    """Smallest, then lexicographically least, clique of the 1-skeleton that is no simplex.

    Such a clique has all its facets in L, so it extends a simplex one
    size down by a vertex larger than all of it.
    """
    adj = L.one_skeleton()
    by_size: dict[int, list[frozenset]] = {}
    for s in L.simplices:
        by_size.setdefault(len(s), []).append(s)
    rank = {v: i for i, v in enumerate(L.vertices)}
    for k in range(3, L.dim + 3):
        found = []
        for S in by_size.get(k - 1, []):
            top = max(rank[v] for v in S)
            common = set.intersection(*(set(adj[v]) for v in S))
            for u in common:
                if rank[u] <= top:
                    continue
                C = S | {u}
                if C in L.simplices:
                    continue
                if all(C - {x} in L.simplices for x in C):
                    found.append(_sorted_tuple(C))
        if found:
            return min(found, key=_tuple_key)
    return None


def is_flag(L: SimplicialComplex) -> FlagResult:
    """Flag iff every maximal clique of the 1-skeleton is a simplex."""
    for c in maximal_cliques(L.one_skeleton()):
        if c and frozenset(c) not in L.simplices:
            return FlagResult(False, _minimal_missing_face(L))
    return FlagResult(True)


def simplicial_link(L: SimplicialComplex, v) -> SimplicialComplex:
    if v not in L.vertices:
        raise InputError(f"vertex {v!r} not in complex")
    return SimplicialComplex(s - {v} for s in L.simplices if v in s and len(s) > 1)


def phi(L: SimplicialComplex, n: int) -> bool:
    """Phi_0: an empty triangle exists.  Phi_{n+1}: Phi_n holds in some vertex link."""
    if n < 0:
        raise InputError("n must be nonnegative")
    if n == 0:
        adj = L.one_skeleton()
        for a in L.vertices:
            for b in adj[a]:
                for c in adj[a] & adj[b]:
                    if frozenset((a, b, c)) not in L.simplices:
                        return True
        return False
    return any(phi(simplicial_link(L, v), n - 1) for v in L.vertices)


# -- cube complexes ------------------------------------------------------------

def _cube_dim(cell: tuple) -> int:
    n = len(cell)
    d = n.bit_length() - 1
    if n == 0 or 1 << d != n:
        raise InputError(f"cube cell must have 2^d vertices, got {n}")
    return d


@lru_cache(maxsize=None)
def _symmetries(d: int) -> tuple[tuple[int, ...], ...]:
    """Index permutations of {0,1}^d induced by the hyperoctahedral group."""
    out = []
    for perm in itertools.permutations(range(d)):
        for flips in range(1 << d):
            m = []
            for i in range(1 << d):
                j = 0
                for a in range(d):
                    bit = ((i >> perm[a]) & 1) ^ ((flips >> a) & 1)
                    j |= bit << a
                m.append(j)
            out.append(tuple(m))
    return tuple(out)


@lru_cache(maxsize=None)
def _faces_index(d: int) -> tuple[tuple[int, ...], ...]:
    """Index tuples of every face of the d-cube, each in its own binary order."""
    out = []
    for assign in itertools.product((0, 1, None), repeat=d):
        free = [a for a in range(d) if assign[a] is None]
        base = sum(1 << a for a in range(d) if assign[a] == 1)
        idx = []
        for i in range(1 << len(free)):
            j = base
            for b, a in enumerate(free):
                if (i >> b) & 1:
                    j |= 1 << a
            idx.append(j)
        out.append(tuple(idx))
    return tuple(out)


def canonical_cell(cell: Sequence[Hashable]) -> tuple:
    """Least relabelling of the cell under cube symmetries."""
    cell = tuple(cell)
    d = _cube_dim(cell)
    return min((tuple(cell[i] for i in m) for m in _symmetries(d)), key=lambda t: [sort_key(x) for x in t])


def cell_faces(cell: tuple) -> list[tuple]:
    d = _cube_dim(cell)
    return [tuple(cell[i] for i in idx) for idx in _faces_index(d)]


class CubeComplex:
    """Cube complex given by cells; faces are added automatically."""

    def __init__(self, cells: Iterable[Sequence[Hashable]]):
        found: set[tuple] = set()
        for c in cells:
            c = tuple(c)
            for f in cell_faces(c):
                found.add(canonical_cell(f))
        self.cells: dict[int, list[tuple]] = {}
        for c in found:
            self.cells.setdefault(_cube_dim(c), []).append(c)
        for d in self.cells:
            self.cells[d].sort(key=lambda t: [sort_key(x) for x in t])
        self.vertices = tuple(c[0] for c in self.cells.get(0, []))

    @classmethod
    def from_top_cells(cls, cells) -> "CubeComplex":
        return cls(cells)

    @classmethod
    def cube(cls, n: int, prefix: str = "") -> "CubeComplex":
        """The standard n-cube; vertex i is named by its bit string (or prefix + index)."""
        if n < 0:
            raise InputError("n must be nonnegative")
        names = [prefix + format(i, f"0{n}b")[::-1] if n else prefix + "0" for i in range(1 << n)]
        return cls([tuple(names)])

    @classmethod
    def from_json(cls, data: dict) -> "CubeComplex":
        if "cells" not in data:
            raise InputError("cube complex JSON needs 'cells'")
        return cls(data["cells"])

    def to_json(self) -> dict:
        return {"cells": [list(c) for c in self.all_cells()]}

    def all_cells(self) -> list[tuple]:
        return [c for d in sorted(self.cells) for c in self.cells[d]]

    def top_cells(self) -> list[tuple]:
        faces = set()
        for c in self.all_cells():
            for f in cell_faces(c):
                cf = canonical_cell(f)
                if cf != c:
                    faces.add(cf)
        return [c for c in self.all_cells() if c not in faces]

    @property
    def dim(self) -> int:
        return max(self.cells, default=-1)

    def counts(self) -> list[int]:
        return [len(self.cells.get(d, [])) for d in range(self.dim + 1)]

    def __repr__(self):
        return f"CubeComplex(cells={self.counts()})"


@dataclass
class StrictResult:
    strict: bool
    rule: str | None = None
    witness: tuple = ()

    def __bool__(self):
        return self.strict

    def to_json(self):
        return {"strict": self.strict, "rule": self.rule, "witness": [list(c) for c in self.witness]}


def validate_strict(K: CubeComplex) -> StrictResult:
    """Distinct corners in every cell, and cells meet in a single common face or not at all."""
    cells = K.all_cells()
    for c in cells:
        if len(set(c)) != len(c):
            return StrictResult(False, "injective", (c,))
    faces_by_vset: dict[tuple, dict[frozenset, set]] = {}
    at_vertex: dict = {}
    for c in cells:
        fmap: dict[frozenset, set] = {}
        for f in cell_faces(c):
            fmap.setdefault(frozenset(f), set()).add(canonical_cell(f))
        faces_by_vset[c] = fmap
        for v in c:
            at_vertex.setdefault(v, []).append(c)
    seen = set()
    for v in K.vertices:
        for c, e in itertools.combinations(at_vertex.get(v, []), 2):
            if (c, e) in seen:
                continue
            seen.add((c, e))
            S = frozenset(c) & frozenset(e)
            fc = faces_by_vset[c].get(S, set())
            fe = faces_by_vset[e].get(S, set())
            if not (fc & fe):
                return StrictResult(False, "intersection", (c, e))
    return StrictResult(True)


def cube_vertex_link(K: CubeComplex, v) -> SimplicialComplex:
    """Corners at v: link vertices are the neighbours of v, one simplex per cell at v."""
    if v not in K.vertices:
        raise InputError(f"vertex {v!r} not in cube complex")
    simps = []
    for c in K.all_cells():
        if v not in c or len(c) == 1:
            continue
        if len(set(c)) != len(c):
            raise InputError(f"cell {c} has repeated vertices; links need a strict complex")
        d = _cube_dim(c)
        i = c.index(v)
        simps.append(frozenset(c[i ^ (1 << a)] for a in range(d)))
    return SimplicialComplex.from_facets(simps) if simps else SimplicialComplex([])


@dataclass
class GromovReport:
    passed: bool
    failures: list = field(default_factory=list)
    checked: int = 0

    @property
    def verdict(self) -> str:
        return "nonpositively curved" if self.passed else "not nonpositively curved"

    def to_json(self):
        return {
            "verdict": "pass" if self.passed else "fail",
            "checked_vertices": self.checked,
            "failures": [{"vertex": v, "witness": list(w)} for v, w in self.failures],
        }


def gromov_check(K: CubeComplex, vertices: Iterable | None = None) -> GromovReport:
    """Flag test of every vertex link (or of the given vertices only)."""
    st = validate_strict(K)
    if not st:
        raise InputError(f"cube complex is not strict ({st.rule}): {st.witness}")
    todo = K.vertices if vertices is None else sorted_ids(vertices)
    failures = []
    n = 0
    for v in todo:
        n += 1
        r = is_flag(cube_vertex_link(K, v))
        if not r:
            failures.append((v, r.witness))
    return GromovReport(not failures, failures, n)
