"""Minimal enclosing balls, circumcenters and fixed points of finite isometry groups.

In a complete CAT(0) space every bounded set lies in a unique closed ball of
least radius.  A group of isometries with a bounded orbit permutes that
orbit, hence fixes the centre of its minimal ball.  This module realises the
statement for Euclidean space (Welzl's move-to-front algorithm) and for
metric trees (midpoint of a diametral pair).
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

import numpy as np

from ._util import InputError, OrartError
from .metric_graph import GraphPoint, MetricGraph, graph_distance, midpoints

CLOSURE_TOL = 1e-8
FIXED_TOL = 1e-7


class GroupClosureError(OrartError):
    """The isometries given do not form a group."""


class OrbitCapError(OrartError):
    """Group or orbit exceeded the configured size cap."""


@dataclass(frozen=True)
class Ball:
    center: Any
    radius: float

    def to_json(self):
        c = self.center
        if hasattr(c, "to_json"):
            c = c.to_json()
        elif isinstance(c, np.ndarray):
            c = c.tolist()
        return {"center": c, "radius": self.radius}


def _as_points(points) -> np.ndarray:
    P = np.asarray(points, dtype=float)
    if P.ndim == 1:
        P = P[:, None]
    if P.ndim != 2 or P.shape[0] == 0:
        raise InputError("need a nonempty finite set of points")
    if not np.all(np.isfinite(P)):
        raise InputError("points must be finite")
    return P


def _ball_on_boundary(R: list[np.ndarray]) -> tuple[np.ndarray, float]:
    """Smallest ball with all of R on its boundary (circumball in the affine hull)."""
    if not R:
        return None, -1.0
    p0 = R[0]
    if len(R) == 1:
        return p0.copy(), 0.0
    A = np.array([p - p0 for p in R[1:]])
    rhs = 0.5 * np.einsum("ij,ij->i", A, A)
    lam, *_ = np.linalg.lstsq(A @ A.T, rhs, rcond=None)
    c = p0 + lam @ A
    return c, float(max(np.linalg.norm(p - c) for p in R))


def _inside(c, r, p, eps) -> bool:
    return c is not None and np.linalg.norm(p - c) <= r + eps


def _welzl(P: list[np.ndarray], R: list[np.ndarray], dim: int, eps: float):
    c, r = _ball_on_boundary(R)
    if len(R) == dim + 1:
        return c, r
    for i, p in enumerate(P):
        if not _inside(c, r, p, eps):
            c, r = _welzl(P[:i], R + [p], dim, eps)
    return c, r


def min_enclosing_ball(points, seed: int = 0) -> Ball:
    """Smallest closed ball containing a finite subset of E^n."""
    P = _as_points(points)
    uniq = np.unique(P, axis=0)
    scale = max(1.0, float(np.abs(uniq).max()))
    eps = 1e-12 * scale
    order = list(range(len(uniq)))
    random.Random(seed).shuffle(order)
    pts = [uniq[i] for i in order]
    c, r = _welzl(pts, [], P.shape[1], eps)
    r = float(np.max(np.linalg.norm(P - c, axis=1)))
    return Ball(center=c, radius=r)


def circumcenter(points, seed: int = 0) -> np.ndarray:
    return min_enclosing_ball(points, seed).center


def tree_circumcenter(G: MetricGraph, S: Sequence[GraphPoint]) -> Ball:
    """Circumcentre of a finite set of points of a metric tree."""
    if not G.is_tree():
        raise InputError("tree_circumcenter needs a tree")
    S = list(S)
    if not S:
        raise InputError("need at least one point")
    best = (0.0, 0, 0)
    for i, j in itertools.combinations(range(len(S)), 2):
        d = graph_distance(G, S[i], S[j])
        if d > best[0]:
            best = (d, i, j)
    diam, i, j = best
    if diam == 0:
        return Ball(S[0], 0.0)
    (m,) = midpoints(G, S[i], S[j])
    return Ball(m, diam / 2.0)


@dataclass(frozen=True, eq=False)
class EuclideanIsometry:
    """x -> Q x + b with Q orthogonal."""

    Q: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        Q = np.atleast_2d(np.asarray(self.Q, dtype=float))
        b = np.asarray(self.b, dtype=float).reshape(-1)
        n = Q.shape[0]
        if Q.shape != (n, n) or b.shape != (n,):
            raise InputError("isometry needs a square Q and a matching b")
        if not np.allclose(Q.T @ Q, np.eye(n), atol=1e-9, rtol=0):
            raise InputError("Q is not orthogonal")
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "b", b)

    @classmethod
    def identity(cls, n: int) -> "EuclideanIsometry":
        return cls(np.eye(n), np.zeros(n))

    @classmethod
    def rotation2d(cls, theta: float, center=(0.0, 0.0)) -> "EuclideanIsometry":
        c, s = math.cos(theta), math.sin(theta)
        Q = np.array([[c, -s], [s, c]])
        z = np.asarray(center, dtype=float)
        return cls(Q, z - Q @ z)

    @classmethod
    def reflection2d(cls, angle: float) -> "EuclideanIsometry":
        """Reflection in the line through the origin at the given angle."""
        c, s = math.cos(2 * angle), math.sin(2 * angle)
        return cls(np.array([[c, s], [s, -c]]), np.zeros(2))

    @classmethod
    def from_json(cls, data: dict) -> "EuclideanIsometry":
        return cls(np.array(data["Q"], dtype=float), np.array(data["b"], dtype=float))

    @property
    def dim(self) -> int:
        return self.Q.shape[0]

    def __call__(self, x):
        return self.Q @ np.asarray(x, dtype=float) + self.b

    def __matmul__(self, other: "EuclideanIsometry") -> "EuclideanIsometry":
        """Composition: (self @ other)(x) = self(other(x))."""
        return EuclideanIsometry(self.Q @ other.Q, self.Q @ other.b + self.b)

    def isclose(self, other: "EuclideanIsometry", tol: float = CLOSURE_TOL) -> bool:
        return bool(np.all(np.abs(self.Q - other.Q) <= tol) and np.all(np.abs(self.b - other.b) <= tol))

    def to_json(self):
        return {"Q": self.Q.tolist(), "b": self.b.tolist()}


def _find(group: Sequence[EuclideanIsometry], g: EuclideanIsometry, tol: float) -> int | None:
    for i, h in enumerate(group):
        if h.isclose(g, tol):
            return i
    return None


def check_closure(group: Sequence[EuclideanIsometry], tol: float = CLOSURE_TOL) -> None:
    group = list(group)
    if not group:
        raise GroupClosureError("empty set of isometries")
    for (i, g), (j, h) in itertools.product(enumerate(group), repeat=2):
        if _find(group, g @ h, tol) is None:
            raise GroupClosureError(f"composition of elements {i} and {j} is not listed")


def generate_group(generators: Iterable[EuclideanIsometry], cap: int = 1000,
                   tol: float = CLOSURE_TOL) -> list[EuclideanIsometry]:
    """Close a set of isometries under composition; fails beyond ``cap`` elements."""
    gens = list(generators)
    if not gens:
        raise InputError("need at least one generator")
    elems = [EuclideanIsometry.identity(gens[0].dim)]
    frontier = list(elems)
    while frontier:
        new = []
        for g in frontier:
            for s in gens:
                h = s @ g
                if _find(elems, h, tol) is None:
                    elems.append(h)
                    new.append(h)
                    if len(elems) > cap:
                        raise OrbitCapError(f"group exceeds {cap} elements; is it finite?")
        frontier = new
    return elems


def orbit(group: Sequence[EuclideanIsometry], seed, tol: float = CLOSURE_TOL, cap: int = 10000) -> np.ndarray:
    pts: list[np.ndarray] = []
    for g in group:
        y = g(seed)
        if not any(np.all(np.abs(y - p) <= tol) for p in pts):
            pts.append(y)
            if len(pts) > cap:
                raise OrbitCapError(f"orbit exceeds {cap} points")
    return np.array(pts)


def fixed_point(group: Sequence[EuclideanIsometry], seed, cap: int = 10000,
                tol: float = CLOSURE_TOL) -> np.ndarray:
    """Circumcentre of the orbit of ``seed``; fixed by every element."""
    group = list(group)
    if len(group) > cap:
        raise OrbitCapError(f"group has more than {cap} elements")
    check_closure(group, tol)
    seed = np.asarray(seed, dtype=float)
    c = circumcenter(orbit(group, seed, tol, cap))
    for g in group:
        if np.max(np.abs(g(c) - c)) > FIXED_TOL:
            raise OrartError("circumcentre is not fixed; input is not a group of isometries")
    return c
