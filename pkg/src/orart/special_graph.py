"""Special graphs: oriented graphs with normal and special vertices and edges.

Normal edges are stored unordered, special edges as (origin, target) pairs.
A special edge points at a special vertex, every special vertex is the
target of some special edge, and no clique holds two special vertices
(equivalently, no edge joins two special vertices).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Hashable, Iterable

from ._util import InputError, sort_key, sorted_ids
from .cliques import adjacency, clique_counts, maximal_cliques as _bk

RULES = (
    "empty",
    "loop",
    "unknown-vertex",
    "conflicting-edge",
    "special-edge-target",
    "special-vertex-needs-special-edge",
    "clique",
)


@dataclass
class Diagnostics:
    valid: bool
    rule: str | None = None
    witness: tuple = ()
    message: str = ""

    def __bool__(self):
        return self.valid

    def to_json(self):
        return {"valid": self.valid, "rule": self.rule, "witness": list(self.witness), "message": self.message}


class SpecialGraph:
    """Raw special-graph data; call :meth:`validate` (or :meth:`checked`) before use."""

    def __init__(self, vertices: dict[Hashable, bool] | Iterable[Hashable],
                 normal_edges: Iterable[tuple] = (), special_edges: Iterable[tuple] = ()):
        if isinstance(vertices, dict):
            self.special_flags = dict(vertices)
        else:
            self.special_flags = {v: False for v in vertices}
        self._raw_normal = [tuple(e) for e in normal_edges]
        self._raw_special = [tuple(e) for e in special_edges]
        self.vertices = tuple(sorted_ids(self.special_flags))
        self.normal_edges = frozenset(frozenset(e) for e in self._raw_normal)
        self.special_edges = frozenset(self._raw_special)

    # -- construction ----------------------------------------------------------

    @classmethod
    def from_json(cls, data: dict) -> "SpecialGraph":
        try:
            verts = {}
            for i, v in enumerate(data["vertices"]):
                if isinstance(v, dict):
                    if "id" not in v:
                        raise InputError(f"vertices[{i}]: missing field 'id'")
                    verts[v["id"]] = bool(v.get("special", False))
                else:
                    verts[v] = False
            normal, special = [], []
            for i, e in enumerate(data.get("edges", [])):
                for k in ("from", "to"):
                    if k not in e:
                        raise InputError(f"edges[{i}]: missing field '{k}'")
                (special if e.get("special", False) else normal).append((e["from"], e["to"]))
        except (TypeError, AttributeError) as exc:
            raise InputError(f"special graph JSON: {exc}") from exc
        except KeyError as exc:
            raise InputError(f"special graph JSON: missing field {exc}") from exc
        return cls(verts, normal, special)

    def to_json(self) -> dict:
        edges = [{"from": u, "to": w, "special": False} for u, w in self.sorted_normal_edges()]
        edges += [{"from": o, "to": t, "special": True} for o, t in self.sorted_special_edges()]
        return {"vertices": [{"id": v, "special": self.special_flags[v]} for v in self.vertices], "edges": edges}

    def checked(self) -> "SpecialGraph":
        d = self.validate()
        if not d:
            raise InputError(f"invalid special graph ({d.rule}): {d.message}")
        return self

    # -- accessors -------------------------------------------------------------

    @property
    def special_vertices(self) -> tuple:
        return tuple(v for v in self.vertices if self.special_flags[v])

    @property
    def normal_vertices(self) -> tuple:
        return tuple(v for v in self.vertices if not self.special_flags[v])

    def is_special(self, v) -> bool:
        return self.special_flags[v]

    def sorted_normal_edges(self) -> list[tuple]:
        return sorted((tuple(sorted_ids(e)) for e in self.normal_edges), key=lambda e: [sort_key(x) for x in e])

    def sorted_special_edges(self) -> list[tuple]:
        return sorted(self.special_edges, key=lambda e: [sort_key(x) for x in e])

    def oriented_edges(self) -> set[tuple]:
        """E as ordered pairs: both orientations of each normal edge, special edges once."""
        out = set(self.special_edges)
        for e in self.normal_edges:
            u, w = tuple(e)
            out.add((u, w))
            out.add((w, u))
        return out

    def adjacent(self, u, w) -> bool:
        return frozenset((u, w)) in self.naive().edges

    def generator_order(self) -> tuple:
        """Normal vertices first, then special ones, each in id order."""
        return self.normal_vertices + self.special_vertices

    def induced(self, vs: Iterable[Hashable]) -> "SpecialGraph":
        """Induced subgraph.  A special vertex that keeps no incoming special
        edge is demoted to normal; the group presentation is unaffected."""
        vs = set(vs)
        sp_edges = [e for e in self.special_edges if e[0] in vs and e[1] in vs]
        targets = {t for _, t in sp_edges}
        return SpecialGraph(
            {v: self.special_flags[v] and v in targets for v in vs},
            [tuple(e) for e in self.normal_edges if e <= vs],
            sp_edges,
        )

    def is_complete(self) -> bool:
        n = len(self.vertices)
        return len(self.naive().edges) == n * (n - 1) // 2

    def __eq__(self, other):
        return (isinstance(other, SpecialGraph) and self.special_flags == other.special_flags
                and self.normal_edges == other.normal_edges and self.special_edges == other.special_edges)

    def __hash__(self):
        return hash((frozenset(self.special_flags.items()), self.normal_edges, self.special_edges))

    def __repr__(self):
        return (f"SpecialGraph(special={list(self.special_vertices)}, normal_edges={self.sorted_normal_edges()}, "
                f"special_edges={self.sorted_special_edges()}, vertices={list(self.vertices)})")

    # -- validation ------------------------------------------------------------

    def validate(self) -> Diagnostics:
        if not self.vertices:
            return Diagnostics(False, "empty", (), "no vertices")
        verts = set(self.vertices)
        for e in self._raw_normal + self._raw_special:
            if len(e) != 2:
                return Diagnostics(False, "loop", e, f"edge {e} is not a pair")
            if e[0] == e[1]:
                return Diagnostics(False, "loop", e, f"loop at {e[0]!r}")
        for e in self._raw_normal + self._raw_special:
            for x in e:
                if x not in verts:
                    return Diagnostics(False, "unknown-vertex", (x,), f"edge {e} uses undeclared vertex {x!r}")
        for o, t in self.sorted_special_edges():
            if frozenset((o, t)) in self.normal_edges:
                return Diagnostics(False, "conflicting-edge", (o, t), f"{o!r}-{t!r} is both normal and special")
            if (t, o) in self.special_edges:
                return Diagnostics(False, "conflicting-edge", (o, t), f"special edges in both directions on {o!r}-{t!r}")
        for o, t in self.sorted_special_edges():
            if not self.special_flags[t]:
                return Diagnostics(False, "special-edge-target", (o, t), f"special edge {(o, t)} ends at normal vertex {t!r}")
        targets = {t for _, t in self.special_edges}
        for v in self.special_vertices:
            if v not in targets:
                return Diagnostics(False, "special-vertex-needs-special-edge", (v,),
                                   f"special vertex {v!r} is not the target of a special edge")
        sp = set(self.special_vertices)
        for u, w in self.naive().sorted_edges():
            if u in sp and w in sp:
                return Diagnostics(False, "clique", (u, w), f"special vertices {u!r} and {w!r} are adjacent")
        return Diagnostics(True)

    # -- derived objects ---------------------------------------------------------

    def naive(self) -> "NaiveGraph":
        return naive(self)

    def attractors(self) -> tuple:
        return attractors(self)


def naive(G: SpecialGraph) -> "NaiveGraph":
    edges = set(G.normal_edges) | {frozenset(e) for e in G.special_edges}
    return NaiveGraph(G.vertices, edges)


def attractors(G: SpecialGraph) -> tuple:
    """Vertices with at least one incident edge, every one special and pointing in."""
    out = []
    for v in G.vertices:
        incident_normal = any(v in e for e in G.normal_edges)
        special_in = [e for e in G.special_edges if e[1] == v]
        special_out = [e for e in G.special_edges if e[0] == v]
        if special_in and not incident_normal and not special_out:
            out.append(v)
    return tuple(out)


class NaiveGraph:
    """Undirected simple graph."""

    def __init__(self, vertices: Iterable[Hashable], edges: Iterable[Iterable[Hashable]]):
        self.vertices = tuple(sorted_ids(set(vertices)))
        es = set()
        vs = set(self.vertices)
        for e in edges:
            e = frozenset(e)
            if len(e) != 2:
                raise InputError(f"edge {tuple(e)} is not a 2-subset")
            if not e <= vs:
                raise InputError(f"edge {tuple(e)} uses unknown vertices")
            es.add(e)
        self.edges = frozenset(es)
        self.adj = adjacency(self.vertices, (tuple(e) for e in self.edges))

    @classmethod
    def from_json(cls, data: dict) -> "NaiveGraph":
        return cls(data["vertices"], data.get("edges", []))

    def to_json(self):
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.sorted_edges()]}

    def sorted_edges(self) -> list[tuple]:
        return sorted((tuple(sorted_ids(e)) for e in self.edges), key=lambda e: [sort_key(x) for x in e])

    def __eq__(self, other):
        return isinstance(other, NaiveGraph) and set(self.vertices) == set(other.vertices) and self.edges == other.edges

    def __hash__(self):
        return hash((frozenset(self.vertices), self.edges))

    def __repr__(self):
        return f"NaiveGraph(vertices={list(self.vertices)}, edges={self.sorted_edges()})"

    def is_chordal(self) -> bool:
        return is_chordal(self)

    def maximal_cliques(self) -> list[tuple]:
        return maximal_cliques(self)

    def clique_counts(self) -> list[int]:
        return clique_counts(self.adj)


def _as_naive(G) -> NaiveGraph:
    return naive(G) if isinstance(G, SpecialGraph) else G


def mcs_order(G: NaiveGraph) -> list:
    """Maximum-cardinality search; ties go to the least vertex.  Returns the visit order."""
    G = _as_naive(G)
    weight = {v: 0 for v in G.vertices}
    rank = {v: i for i, v in enumerate(G.vertices)}
    order = []
    left = set(G.vertices)
    while left:
        v = min(left, key=lambda x: (-weight[x], rank[x]))
        order.append(v)
        left.remove(v)
        for w in G.adj[v]:
            if w in left:
                weight[w] += 1
    return order


def perfect_elimination_ordering(G) -> list | None:
    """A perfect elimination ordering (reverse MCS order) or None if G is not chordal."""
    G = _as_naive(G)
    order = mcs_order(G)
    peo = order[::-1]
    pos = {v: i for i, v in enumerate(peo)}
    for v in peo:
        later = [w for w in G.adj[v] if pos[w] > pos[v]]
        if not later:
            continue
        parent = min(later, key=lambda w: pos[w])
        for w in later:
            if w != parent and w not in G.adj[parent]:
                return None
    return peo


def is_chordal(G) -> bool:
    return perfect_elimination_ordering(G) is not None


def maximal_cliques(G) -> list[tuple]:
    G = _as_naive(G)
    return _bk(G.adj)


@dataclass
class CliqueTree:
    nodes: list[tuple]
    edges: list[tuple[int, int]] = field(default_factory=list)

    def neighbours(self, i: int) -> list[int]:
        return sorted([b for a, b in self.edges if a == i] + [a for a, b in self.edges if b == i])

    def path(self, i: int, j: int) -> list[int]:
        prev = {i: None}
        stack = [i]
        while stack:
            x = stack.pop()
            for y in self.neighbours(x):
                if y not in prev:
                    prev[y] = x
                    stack.append(y)
        if j not in prev:
            raise InputError("clique tree is disconnected")
        out = [j]
        while out[-1] != i:
            out.append(prev[out[-1]])
        return out[::-1]

    def is_tree(self) -> bool:
        n = len(self.nodes)
        if len(self.edges) != n - 1:
            return False
        if n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            for y in self.neighbours(stack.pop()):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == n

    def to_json(self):
        return {"nodes": [list(c) for c in self.nodes], "edges": [list(e) for e in self.edges]}


def verify_intersection_property(T: CliqueTree) -> tuple | None:
    """Exhaustive check; returns a violating (i, j, k) or None."""
    if not T.is_tree():
        return ("not-a-tree",)
    sets = [frozenset(c) for c in T.nodes]
    for i, j in itertools.combinations(range(len(sets)), 2):
        common = sets[i] & sets[j]
        for k in T.path(i, j):
            if not common <= sets[k]:
                return (i, j, k)
    return None


def clique_tree(G, seed: int | None = None) -> CliqueTree:
    """Maximum-weight spanning tree of the clique intersection graph.

    Weights are intersection sizes.  Ties are broken by clique labels, or,
    when ``seed`` is given, by a seeded shuffle (all such trees are valid
    clique trees, so this enumerates alternatives).
    """
    G = _as_naive(G)
    if not is_chordal(G):
        raise InputError("clique trees exist only for chordal graphs")
    cl = maximal_cliques(G)
    cand = [(i, j, len(set(cl[i]) & set(cl[j]))) for i, j in itertools.combinations(range(len(cl)), 2)]
    if seed is not None:
        random.Random(seed).shuffle(cand)
    cand.sort(key=lambda e: -e[2])  # stable: keeps label or shuffled order among ties
    parent = list(range(len(cl)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = []
    for i, j, _ in cand:
        a, b = find(i), find(j)
        if a != b:
            parent[a] = b
            edges.append((i, j))
    T = CliqueTree(cl, sorted(edges))
    bad = verify_intersection_property(T)
    if bad is not None:
        raise AssertionError(f"clique tree violates the intersection property at {bad}")
    return T
