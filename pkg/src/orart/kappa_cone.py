"""The kappa-cone over a finite metric space.

Cone points are pairs (t, y) with t >= 0 (t <= D_kappa/2 for kappa > 0);
all points with t = 0 are the cone vertex.  Distances follow the law of
cosines in M_kappa^2 with the base distance, truncated at pi, as the angle
at the vertex.  :func:`berestovskii_probe` hunts for curvature violations in
the cone, which by Berestovskii's theorem reflect a failure of CAT(1) in the
base.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Any, Hashable, Sequence

import numpy as np

from . import model_spaces as ms
from ._util import InputError, OrartError
from .metric_graph import CatReport, _Collector, cn_test

METRIC_TOL = 1e-9


class MetricAxiomError(OrartError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class FiniteMetricSpace:
    """Point ids with a symmetric distance matrix."""

    def __init__(self, points: Sequence[Hashable], d, check: bool = True, tol: float = METRIC_TOL):
        self.points = tuple(points)
        self.d = np.asarray(d, dtype=float)
        n = len(self.points)
        if self.d.shape != (n, n):
            raise InputError(f"distance matrix must be {n}x{n}")
        if len(set(self.points)) != n:
            raise InputError("duplicate point ids")
        self.index = {p: i for i, p in enumerate(self.points)}
        if check:
            w = self.axiom_violation(tol)
            if w is not None:
                raise MetricAxiomError(f"metric axiom '{w[0]}' fails at {w[1]}", w)

    @classmethod
    def from_json(cls, data: dict) -> "FiniteMetricSpace":
        try:
            return cls(data["points"], data["d"])
        except KeyError as exc:
            raise InputError(f"metric space JSON: missing field {exc}") from exc

    def to_json(self):
        return {"points": list(self.points), "d": self.d.tolist()}

    def __len__(self):
        return len(self.points)

    def distance(self, x, y) -> float:
        return float(self.d[self.index[x], self.index[y]])

    def axiom_violation(self, tol: float = METRIC_TOL):
        """First violated axiom as (name, witness), or None."""
        d = self.d
        n = len(self.points)
        if not np.all(np.isfinite(d)):
            return ("finite", ())
        for i in range(n):
            if abs(d[i, i]) > tol:
                return ("zero-diagonal", (self.points[i],))
        for i, j in itertools.combinations(range(n), 2):
            if abs(d[i, j] - d[j, i]) > tol:
                return ("symmetry", (self.points[i], self.points[j]))
            if d[i, j] < -tol:
                return ("nonnegative", (self.points[i], self.points[j]))
        # vectorised triangle inequality: d[i,k] <= d[i,j] + d[j,k]
        for j in range(n):
            slack = d[:, j][:, None] + d[j, :][None, :] - d
            if slack.min() < -tol:
                i, k = np.unravel_index(np.argmin(slack), slack.shape)
                return ("triangle", (self.points[i], self.points[j], self.points[k]))
        return None


def circle_space(n: int, circumference: float = 2 * math.pi) -> FiniteMetricSpace:
    """n evenly spaced points on a circle with the intrinsic (arc) metric."""
    step = circumference / n
    idx = np.arange(n)
    k = np.abs(idx[:, None] - idx[None, :])
    k = np.minimum(k, n - k)
    return FiniteMetricSpace(list(range(n)), k * step)


@dataclass(frozen=True)
class ConePoint:
    t: float
    y: Any = None

    @property
    def is_vertex(self) -> bool:
        return self.t == 0

    def canonical(self) -> "ConePoint":
        return ConePoint(0.0, None) if self.t == 0 else self

    def __repr__(self):
        return "ConePoint(vertex)" if self.is_vertex else f"ConePoint({self.t:.6g}, {self.y!r})"

    def to_json(self):
        return {"t": self.t, "y": None if self.is_vertex else self.y}


VERTEX = ConePoint(0.0, None)


def _check_radius(kappa: float, t: float):
    if t < 0 or not math.isfinite(t):
        raise InputError(f"cone radius {t} must be finite and nonnegative")
    if kappa > 0 and t > ms.diameter(kappa) / 2 + 1e-12:
        raise InputError(f"cone radius {t} exceeds D_kappa/2 = {ms.diameter(kappa) / 2}")


def cone_distance(kappa: float, x: ConePoint, x2: ConePoint, dY: float) -> float:
    """Distance between t*y and t'*y' given the base distance d(y, y')."""
    kappa = ms.check_kappa(kappa)
    _check_radius(kappa, x.t)
    _check_radius(kappa, x2.t)
    if dY < 0:
        raise InputError("base distance must be nonnegative")
    if x.is_vertex:
        return float(x2.t)
    if x2.is_vertex:
        return float(x.t)
    return ms._opposite_side(kappa, x.t, x2.t, min(math.pi, dY))


class Cone:
    """kappa-cone over a finite metric space, with exact cone geodesics.

    Geodesic points of the cone need points of the base along geodesics of
    Y; a finite base only offers those that happen to be sampled, so
    :meth:`midpoints` may come back empty.
    """

    def __init__(self, kappa: float, Y: FiniteMetricSpace, radii: Sequence[float] = (), tol: float = METRIC_TOL):
        self.kappa = ms.check_kappa(kappa)
        self.Y = Y
        self.tol = tol
        self.radii = tuple(sorted(set(float(r) for r in radii)))
        for r in self.radii:
            _check_radius(self.kappa, r)

    def grid(self) -> list[ConePoint]:
        pts = []
        if 0.0 in self.radii:
            pts.append(VERTEX)
        for t in self.radii:
            if t > 0:
                pts.extend(ConePoint(t, y) for y in self.Y.points)
        return pts

    points = grid

    def distance(self, x: ConePoint, y: ConePoint) -> float:
        dY = 0.0 if x.is_vertex or y.is_vertex else self.Y.distance(x.y, y.y)
        return cone_distance(self.kappa, x, y, dY)

    def _base_points_between(self, y, y2, phi: float) -> list:
        """Points z of Y with d(y,z) = phi and d(z,y2) = d(y,y2) - phi."""
        D = self.Y.distance(y, y2)
        out = []
        for z in self.Y.points:
            if abs(self.Y.distance(y, z) - phi) <= self.tol and abs(self.Y.distance(z, y2) - (D - phi)) <= self.tol:
                out.append(z)
        return out

    def geodesic_points(self, x: ConePoint, x2: ConePoint, s: float) -> list[ConePoint]:
        """Points at distance s from x on the cone geodesics from x to x2."""
        L = self.distance(x, x2)
        if s <= self.tol:
            return [x.canonical()]
        if s >= L - self.tol:
            return [x2.canonical()]
        if x.is_vertex:
            return [ConePoint(s, x2.y)]
        if x2.is_vertex:
            return [ConePoint(x.t - s, x.y)]
        theta = self.Y.distance(x.y, x2.y)
        if theta >= math.pi:
            # through the vertex
            if s <= x.t:
                return [ConePoint(x.t - s, x.y).canonical()]
            return [ConePoint(s - x.t, x2.y)]
        k = self.kappa
        o = ms.basepoint(k)
        p = ms._polar(k, x.t, 0.0)
        q = ms._polar(k, x2.t, theta)
        z = ms.comparison_point((p, q), (0, 1), s)
        r = ms.distance(o, z)
        if r <= self.tol:
            return [VERTEX]
        phi = ms.law_of_cosines_angle(k, ms.TriangleSides(x.t, r, s)) if s > 0 else 0.0
        return [ConePoint(r, z_) for z_ in self._base_points_between(x.y, x2.y, phi)]

    def midpoints(self, x: ConePoint, x2: ConePoint) -> list[ConePoint]:
        return self.geodesic_points(x, x2, self.distance(x, x2) / 2.0)

    def space(self) -> FiniteMetricSpace:
        return cone_space(self.kappa, self.Y, self.radii)


def cone_space(kappa: float, Y: FiniteMetricSpace, radii: Sequence[float], tol: float = METRIC_TOL) -> FiniteMetricSpace:
    """All-pairs cone distances on the grid radii x Y (one vertex for radius 0).

    The metric axioms are re-verified on the result; a failure raises
    :class:`MetricAxiomError` carrying the offending triple.
    """
    cone = Cone(kappa, Y, radii, tol)
    pts = cone.grid()
    n = len(pts)
    d = np.zeros((n, n))
    for i, j in itertools.combinations(range(n), 2):
        d[i, j] = d[j, i] = cone.distance(pts[i], pts[j])
    return FiniteMetricSpace(pts, d, check=True, tol=tol)


def berestovskii_probe(kappa: float, Y: FiniteMetricSpace, radii: Sequence[float],
                       samples: int | Sequence[tuple] | None = None, tol: float = 1e-9,
                       seed: int = 42, keep: int = 10) -> CatReport:
    """Search the cone over Y for CAT(kappa) violations.

    kappa = 0 runs the CN inequality; other curvatures compare d(p, m) with
    its model-plane counterpart for m the midpoint of (q, r).  Triples whose
    midpoint direction is not a sampled base point are skipped and counted.
    """
    cone = Cone(kappa, Y, radii, tol)
    pts = cone.grid()
    if samples is None:
        triples = list(itertools.product(pts, repeat=3))
    elif isinstance(samples, int):
        rng = random.Random(seed)
        triples = [(rng.choice(pts), rng.choice(pts), rng.choice(pts)) for _ in range(samples)]
    else:
        triples = [tuple(s) for s in samples]
    quads = []
    skipped = 0
    mids: dict = {}
    for p, q, r in triples:
        key = (q, r)
        if key not in mids:
            mids[key] = cone.midpoints(q, r)
        if not mids[key]:
            skipped += 1
            continue
        quads.extend((p, q, r, m) for m in mids[key])
    if kappa == 0:
        rep = cn_test(cone, quads, tol=tol, keep=keep)
    else:
        rep = _midpoint_comparison(cone, quads, tol, keep)
    rep.test = f"berestovskii[{rep.test}]"
    rep.n_skipped = skipped
    return rep


def _midpoint_comparison(cone: Cone, quads, tol, keep) -> CatReport:
    k = cone.kappa
    D = ms.diameter(k)
    col = _Collector("midpoint-comparison", tol, keep)
    for p, q, r, m in quads:
        a, b, c = cone.distance(p, q), cone.distance(p, r), cone.distance(q, r)
        if k > 0 and a + b + c >= 2 * D:
            col.skipped += 1
            continue
        tri = ms.comparison_triangle(k, ms.TriangleSides(a, b, c))
        mb = ms.comparison_point(tri, (1, 2), c / 2.0)
        dm = ms.distance(tri[0], mb)
        dx = cone.distance(p, m)
        col.add(dm * dm - dx * dx, (p, q, r, m), cone=dx, model=dm)
    return col.report()
