"""Metric graphs and sampled CAT(0)-type checks.

A metric graph is a finite graph whose edges are glued copies of intervals;
the distance between two of its points is the length of a shortest
piecewise-linear path.  All the checks here are refutation-only: a failing
report carries a concrete counterexample, a passing one only says that no
sampled configuration violated the inequality.
"""

from __future__ import annotations

import heapq
import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Protocol, Sequence

import numpy as np

from . import model_spaces as ms
from ._util import InputError, OrartError

DEFAULT_TOL = 1e-9
DEFAULT_DENSITY = 16


class OracleError(OrartError):
    """A distance oracle could not produce a required midpoint."""


@dataclass(frozen=True)
class Edge:
    u: Hashable
    v: Hashable
    length: float


class MetricGraph:
    """Finite connected graph with positive edge lengths.

    Edge ids are positions in ``edges``.  Vertex order (used to break ties
    between shortest paths) is the order of ``vertices``.
    """

    def __init__(self, vertices: Iterable[Hashable], edges: Iterable[tuple]):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex ids")
        if not self.vertices:
            raise InputError("a metric graph needs at least one vertex")
        self.index = {v: i for i, v in enumerate(self.vertices)}
        es = []
        for e in edges:
            u, v, length = e
            if u not in self.index or v not in self.index:
                raise InputError(f"edge {e} uses an unknown vertex")
            length = float(length)
            if not (length > 0 and math.isfinite(length)):
                raise InputError(f"edge {e} must have a positive finite length")
            es.append(Edge(u, v, length))
        self.edges = tuple(es)
        self.adj: dict[Hashable, list[tuple[Hashable, float, int]]] = {v: [] for v in self.vertices}
        for i, e in enumerate(self.edges):
            self.adj[e.u].append((e.v, e.length, i))
            if e.u != e.v:
                self.adj[e.v].append((e.u, e.length, i))
        self._dist = {v: self._dijkstra(v) for v in self.vertices}
        if any(math.isinf(d) for row in self._dist.values() for d in row.values()):
            raise InputError("metric graph is disconnected")

    @classmethod
    def unit(cls, vertices, pairs) -> "MetricGraph":
        return cls(vertices, [(u, v, 1.0) for u, v in pairs])

    @classmethod
    def from_json(cls, data: dict) -> "MetricGraph":
        try:
            return cls(data["vertices"], [(e["u"], e["v"], e.get("len", 1.0)) for e in data["edges"]])
        except (KeyError, TypeError) as exc:
            raise InputError(f"metric graph JSON: missing field {exc}") from exc

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"u": e.u, "v": e.v, "len": e.length} for e in self.edges],
        }

    def _dijkstra(self, src) -> dict:
        dist = {v: math.inf for v in self.vertices}
        dist[src] = 0.0
        heap = [(0.0, self.index[src], src)]
        while heap:
            d, _, x = heapq.heappop(heap)
            if d > dist[x]:
                continue
            for y, w, _e in self.adj[x]:
                nd = d + w
                if nd < dist[y]:
                    dist[y] = nd
                    heapq.heappush(heap, (nd, self.index[y], y))
        return dist

    def vertex_distance(self, u, v) -> float:
        return self._dist[u][v]

    def is_tree(self) -> bool:
        return len(self.edges) == len(self.vertices) - 1

    def __repr__(self):
        return f"MetricGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"


@dataclass(frozen=True)
class GraphPoint:
    """A vertex, or a point at parameter t in [0, 1] along an edge.

    Use :func:`point` to build normalised points; (e, 0) and (e, 1) collapse
    to the endpoint vertices.
    """

    vertex: Any = None
    edge: int | None = None
    t: float = 0.0

    @property
    def is_vertex(self) -> bool:
        return self.edge is None

    def __repr__(self):
        if self.is_vertex:
            return f"GraphPoint({self.vertex!r})"
        return f"GraphPoint(edge={self.edge}, t={self.t:.6g})"

    def to_json(self):
        if self.is_vertex:
            return {"vertex": self.vertex}
        return {"edge": self.edge, "t": self.t}


def point(G: MetricGraph, vertex=None, edge: int | None = None, t: float = 0.0) -> GraphPoint:
    if edge is None:
        if vertex not in G.index:
            raise InputError(f"unknown vertex {vertex!r}")
        return GraphPoint(vertex=vertex)
    if not 0 <= edge < len(G.edges):
        raise InputError(f"unknown edge {edge}")
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise InputError(f"edge parameter {t} outside [0, 1]")
    e = G.edges[edge]
    if t == 0.0:
        return GraphPoint(vertex=e.u)
    if t == 1.0:
        return GraphPoint(vertex=e.v)
    return GraphPoint(edge=edge, t=t)


def _anchors(G: MetricGraph, x: GraphPoint) -> list[tuple[Any, float]]:
    """(vertex, distance) pairs through which every path leaving x passes."""
    if x.is_vertex:
        return [(x.vertex, 0.0)]
    e = G.edges[x.edge]
    return [(e.u, x.t * e.length), (e.v, (1.0 - x.t) * e.length)]


def graph_distance(G: MetricGraph, x: GraphPoint, y: GraphPoint) -> float:
    best = math.inf
    for u, du in _anchors(G, x):
        for v, dv in _anchors(G, y):
            best = min(best, du + G.vertex_distance(u, v) + dv)
    if not x.is_vertex and not y.is_vertex and x.edge == y.edge:
        best = min(best, abs(x.t - y.t) * G.edges[x.edge].length)
    return best


def _dist_along(G: MetricGraph, x: GraphPoint, edge: int, t: float) -> float:
    e = G.edges[edge]
    best = math.inf
    for a, da in _anchors(G, x):
        best = min(best, da + G.vertex_distance(a, e.u) + t * e.length,
                   da + G.vertex_distance(a, e.v) + (1 - t) * e.length)
    if not x.is_vertex and x.edge == edge:
        best = min(best, abs(x.t - t) * e.length)
    return best


def _same_point(G: MetricGraph, p: GraphPoint, q: GraphPoint, tol: float) -> bool:
    return graph_distance(G, p, q) <= tol


def midpoints(G: MetricGraph, x: GraphPoint, y: GraphPoint, tol: float = DEFAULT_TOL) -> list[GraphPoint]:
    """All points m with d(x,m) = d(m,y) = d(x,y)/2."""
    D = graph_distance(G, x, y)
    if D <= tol:
        return [x]
    half = D / 2.0
    found: list[GraphPoint] = []
    for v in G.vertices:
        p = GraphPoint(vertex=v)
        if abs(graph_distance(G, x, p) - half) <= tol and abs(graph_distance(G, p, y) - half) <= tol:
            found.append(p)
    for i, e in enumerate(G.edges):
        cands = set()
        for src in (x, y):
            for a, da in _anchors(G, src):
                cands.add((half - da - G.vertex_distance(a, e.u)) / e.length)
                cands.add(1.0 - (half - da - G.vertex_distance(a, e.v)) / e.length)
            if not src.is_vertex and src.edge == i:
                cands.add(src.t + half / e.length)
                cands.add(src.t - half / e.length)
        for t in sorted(cands):
            if not (0.0 < t < 1.0):
                continue
            if abs(_dist_along(G, x, i, t) - half) <= tol and abs(_dist_along(G, y, i, t) - half) <= tol:
                m = GraphPoint(edge=i, t=t)
                if not any(_same_point(G, m, f, 10 * tol) for f in found):
                    found.append(m)
    return found


# -- geodesics ---------------------------------------------------------------

class Geodesic:
    """A shortest path in a metric graph, parametrised by arclength.

    Stored as a list of (edge id, t_start, t_end) pieces.
    """

    def __init__(self, G: MetricGraph, start: GraphPoint, pieces: Sequence[tuple[int, float, float]], tol=DEFAULT_TOL):
        self.G = G
        self.start = start
        self.pieces = [p for p in pieces if p[1] != p[2]]
        self._lengths = [abs(b - a) * G.edges[i].length for i, a, b in self.pieces]
        self.length = float(sum(self._lengths))
        self.end = self.point_at(self.length)
        if abs(graph_distance(G, start, self.end) - self.length) > tol * max(1.0, self.length):
            raise InputError("path is not a shortest path between its endpoints")

    @classmethod
    def through_vertices(cls, G: MetricGraph, seq: Sequence[Hashable], tol=DEFAULT_TOL) -> "Geodesic":
        """Geodesic following the vertex sequence, using shortest parallel edges."""
        pieces = []
        for u, v in zip(seq, seq[1:]):
            best = None
            for w, length, i in G.adj[u]:
                if w == v and (best is None or length < G.edges[best].length):
                    best = i
            if best is None:
                raise InputError(f"no edge between {u!r} and {v!r}")
            e = G.edges[best]
            pieces.append((best, 0.0, 1.0) if e.u == u else (best, 1.0, 0.0))
        return cls(G, GraphPoint(vertex=seq[0]), pieces, tol)

    def point_at(self, s: float) -> GraphPoint:
        if s <= 0 or not self.pieces:
            return self.start
        acc = 0.0
        for (i, a, b), L in zip(self.pieces, self._lengths):
            if s <= acc + L:
                frac = (s - acc) / L
                t = a + (b - a) * frac
                return point(self.G, edge=i, t=min(max(t, 0.0), 1.0))
            acc += L
        i, a, b = self.pieces[-1]
        return point(self.G, edge=i, t=b)

    def at(self, t: float) -> GraphPoint:
        """Constant-speed reparametrisation on [0, 1]."""
        return self.point_at(t * self.length)


def _lex_vertex_path(G: MetricGraph, src, dst, tol) -> list:
    """Lexicographically smallest shortest vertex path (by vertex order)."""
    path = [src]
    cur = src
    total = G.vertex_distance(src, dst)
    done = 0.0
    while cur != dst:
        options = []
        for w, length, _ in G.adj[cur]:
            if abs(done + length + G.vertex_distance(w, dst) - total) <= tol * max(1.0, total):
                options.append(w)
        nxt = min(options, key=lambda w: G.index[w])
        done += min(l for w, l, _ in G.adj[cur] if w == nxt)
        cur = nxt
        path.append(cur)
    return path


def geodesic(G: MetricGraph, x: GraphPoint, y: GraphPoint, tol: float = DEFAULT_TOL) -> Geodesic:
    """Deterministic shortest path from x to y.

    Among shortest paths the one with the lexicographically smallest vertex
    sequence wins; a direct run along a shared edge is preferred when it is
    shortest.
    """
    D = graph_distance(G, x, y)
    if not x.is_vertex and not y.is_vertex and x.edge == y.edge:
        L = G.edges[x.edge].length
        if abs(abs(x.t - y.t) * L - D) <= tol * max(1.0, D):
            return Geodesic(G, x, [(x.edge, x.t, y.t)], tol)
    best = None
    for a, da in _anchors(G, x):
        for b, db in _anchors(G, y):
            if abs(da + G.vertex_distance(a, b) + db - D) > tol * max(1.0, D):
                continue
            seq = _lex_vertex_path(G, a, b, tol)
            key = tuple(G.index[v] for v in seq)
            if best is None or key < best[0]:
                best = (key, a, b, seq)
    _, a, b, seq = best
    pieces = []
    if not x.is_vertex:
        e = G.edges[x.edge]
        pieces.append((x.edge, x.t, 0.0 if a == e.u else 1.0))
    pieces.extend(Geodesic.through_vertices(G, seq, tol).pieces if len(seq) > 1 else [])
    if not y.is_vertex:
        e = G.edges[y.edge]
        pieces.append((y.edge, 0.0 if b == e.u else 1.0, y.t))
    return Geodesic(G, x, pieces, tol)


# -- reports -----------------------------------------------------------------

@dataclass
class Witness:
    points: tuple
    slack: float
    detail: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "points": [p.to_json() if hasattr(p, "to_json") else p for p in self.points],
            "slack": self.slack,
            **({"detail": self.detail} if self.detail else {}),
        }


@dataclass
class CatReport:
    """Verdict of a sampled inequality check.

    ``passed`` is False exactly when some witness has slack below ``-tol``.
    ``witnesses`` keeps the worst offenders, most negative first.
    """

    test: str
    passed: bool
    tol: float
    n_checked: int
    witnesses: list[Witness] = field(default_factory=list)
    n_skipped: int = 0
    min_slack: float = math.inf

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    @property
    def worst(self) -> Witness | None:
        return self.witnesses[0] if self.witnesses else None

    def to_json(self):
        return {
            "test": self.test,
            "verdict": self.verdict,
            "tol": self.tol,
            "checked": self.n_checked,
            "skipped": self.n_skipped,
            "min_slack": None if math.isinf(self.min_slack) else self.min_slack,
            "witnesses": [w.to_json() for w in self.witnesses],
        }


class _Collector:
    def __init__(self, test, tol, keep=10):
        self.test, self.tol, self.keep = test, tol, keep
        self.bad: list[Witness] = []
        self.n = 0
        self.skipped = 0
        self.min_slack = math.inf

    def add(self, slack, points, **detail):
        self.n += 1
        self.min_slack = min(self.min_slack, slack)
        if slack < -self.tol:
            self.bad.append(Witness(tuple(points), slack, detail))
            if len(self.bad) > 4 * self.keep:
                self._trim()

    def _trim(self):
        self.bad.sort(key=lambda w: w.slack)
        del self.bad[self.keep:]

    def report(self) -> CatReport:
        self._trim()
        return CatReport(self.test, not self.bad, self.tol, self.n, list(self.bad), self.skipped, self.min_slack)


# -- distance oracles ----------------------------------------------------------

class DistanceOracle(Protocol):
    def points(self) -> Sequence[Any]: ...
    def distance(self, x, y) -> float: ...
    def midpoints(self, x, y) -> list: ...


class GraphOracle:
    """Metric graph as an oracle; sample points are the vertices by default."""

    def __init__(self, G: MetricGraph, sample: Sequence[GraphPoint] | None = None, subdivide: int = 1):
        self.G = G
        if sample is None:
            sample = [GraphPoint(vertex=v) for v in G.vertices]
            if subdivide > 1:
                for i in range(len(G.edges)):
                    sample += [GraphPoint(edge=i, t=k / subdivide) for k in range(1, subdivide)]
        self._points = list(sample)

    def points(self):
        return self._points

    def distance(self, x, y):
        return graph_distance(self.G, x, y)

    def midpoints(self, x, y):
        return midpoints(self.G, x, y)


class EuclideanOracle:
    """Finite point set in E^n; midpoints are the affine midpoints."""

    def __init__(self, pts):
        self._pts = [tuple(float(c) for c in p) for p in np.atleast_2d(np.asarray(pts, dtype=float))]

    def points(self):
        return self._pts

    def distance(self, x, y):
        return float(np.linalg.norm(np.subtract(x, y)))

    def midpoints(self, x, y):
        return [tuple((np.add(x, y) / 2.0).tolist())]


def _triples(n: int, samples: int | None, rng: random.Random):
    if samples is None:
        yield from itertools.product(range(n), repeat=3)
        return
    for _ in range(samples):
        yield rng.randrange(n), rng.randrange(n), rng.randrange(n)


def cn_test(oracle: DistanceOracle, samples: int | Sequence[tuple] | None = None, tol: float = DEFAULT_TOL,
            seed: int = 42, keep: int = 10) -> CatReport:
    """Bruhat-Tits CN inequality  d(p,q)^2 + d(p,r)^2 >= 2 d(m,p)^2 + 2 d(m,q)^2.

    ``samples`` is None (every triple of oracle points), a count of random
    triples, or an explicit list of (p, q, r) or (p, q, r, m) tuples.  Every
    midpoint m of (q, r) the oracle knows is tested.
    """
    col = _Collector("cn", tol, keep)
    if samples is not None and not isinstance(samples, int):
        quads = []
        for s in samples:
            if len(s) == 4:
                quads.append(tuple(s))
            else:
                p, q, r = s
                ms_ = oracle.midpoints(q, r)
                if not ms_:
                    raise OracleError(f"no midpoint for {q!r}, {r!r}")
                quads.extend((p, q, r, m) for m in ms_)
    else:
        pts = oracle.points()
        rng = random.Random(seed)
        cache: dict = {}
        quads = []
        for i, j, k in _triples(len(pts), samples, rng):
            if (j, k) not in cache:
                cache[(j, k)] = oracle.midpoints(pts[j], pts[k])
                if not cache[(j, k)]:
                    raise OracleError(f"no midpoint for {pts[j]!r}, {pts[k]!r}")
            quads.extend((pts[i], pts[j], pts[k], m) for m in cache[(j, k)])
    d = oracle.distance
    for p, q, r, m in quads:
        lhs = d(p, q) ** 2 + d(p, r) ** 2
        rhs = 2 * d(m, p) ** 2 + 2 * d(m, q) ** 2
        col.add(lhs - rhs, (p, q, r, m), lhs=lhs, rhs=rhs)
    return col.report()


def _grid(density: int) -> list[float]:
    return [k / density for k in range(density + 1)]


def triangle_comparison_test(G: MetricGraph, triple: Sequence[GraphPoint], density: int = DEFAULT_DENSITY,
                             kappa: float = 0.0, tol: float = DEFAULT_TOL, keep: int = 10) -> CatReport:
    """CAT(kappa) inequality d(x,y) <= d(x', y') on a sampled geodesic triangle.

    Sides are the deterministic geodesics [p,q], [p,r], [q,r]; comparison
    points come from the model plane M_kappa^2.  Squared lengths are compared.
    """
    p, q, r = triple
    sides = [geodesic(G, p, q), geodesic(G, p, r), geodesic(G, q, r)]
    a, b, c = (s.length for s in sides)
    D = ms.diameter(kappa)
    if kappa > 0 and a + b + c >= 2 * D:
        raise InputError("triangle perimeter must be below twice the model diameter")
    tri = ms.comparison_triangle(kappa, ms.TriangleSides(a, b, c))
    model_sides = [(0, 1), (0, 2), (1, 2)]
    samples = []
    for side, (geo, ms_side) in enumerate(zip(sides, model_sides)):
        for t in _grid(density):
            s = t * geo.length
            samples.append((side, t, geo.point_at(s), ms.comparison_point(tri, ms_side, s)))
    col = _Collector("triangle", tol, keep)
    for (s1, t1, x, xb), (s2, t2, y, yb) in itertools.combinations(samples, 2):
        dg = graph_distance(G, x, y)
        dm = ms.distance(xb, yb)
        col.add(dm * dm - dg * dg, (x, y), sides=(s1, s2), params=(t1, t2), graph=dg, model=dm)
    return col.report()


def convexity_test(G: MetricGraph, gamma: Geodesic, delta: Geodesic, density: int = DEFAULT_DENSITY,
                   tol: float = DEFAULT_TOL, keep: int = 10) -> CatReport:
    """d(gamma(t), delta(t)) <= (1-t) d(gamma(0), delta(0)) + t d(gamma(1), delta(1))."""
    for g in (gamma, delta):
        if g.G is not G:
            raise InputError("geodesic belongs to a different graph")
    d0 = graph_distance(G, gamma.at(0.0), delta.at(0.0))
    d1 = graph_distance(G, gamma.at(1.0), delta.at(1.0))
    col = _Collector("convexity", tol, keep)
    for t in _grid(density):
        x, y = gamma.at(t), delta.at(t)
        dt = graph_distance(G, x, y)
        bound = (1 - t) * d0 + t * d1
        col.add(bound - dt, (x, y), t=t, distance=dt, bound=bound)
    return col.report()
