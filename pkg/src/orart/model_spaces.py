"""Geometry of the constant-curvature model spaces M_kappa^n.

Points of the sphere are unit vectors in R^{n+1}; points of hyperbolic space
live on the upper sheet of the hyperboloid <x|x> = -1 in Minkowski space
R^{n,1}, last coordinate timelike.  Distances carry the 1/sqrt(|kappa|)
scaling, so a ``ModelPoint`` with kappa=4 on the unit sphere sits in a
sphere of radius 1/2.

The laws of cosines are evaluated in half-angle ("haversine") form, which is
stable for thin and degenerate triangles:

    s(c/2)^2 = s((a-b)/2)^2 + S(a) S(b) sin(gamma/2)^2

where s and S are the kappa-sine (sin, identity or sinh, rescaled).  For
kappa < 0 this is the symmetric identity
cosh c = cosh a cosh b - sinh a sinh b cos(gamma); for kappa > 0 it is
cos c = cos a cos b + sin a sin b cos(gamma).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._util import InputError

CLAMP = 1e-12
MANIFOLD_TOL = 1e-9

__all__ = [
    "ModelPoint",
    "TriangleSides",
    "check_kappa",
    "diameter",
    "distance",
    "law_of_cosines_side",
    "law_of_cosines_angle",
    "comparison_triangle",
    "comparison_point",
    "basepoint",
]


def check_kappa(kappa: float) -> float:
    kappa = float(kappa)
    if not math.isfinite(kappa):
        raise InputError(f"curvature must be finite, got {kappa}")
    return kappa


def diameter(kappa: float) -> float:
    """pi/sqrt(kappa) for kappa > 0, +inf otherwise."""
    kappa = check_kappa(kappa)
    if kappa > 0:
        return math.pi / math.sqrt(kappa)
    return math.inf


def _clamp(x: float, lo: float, hi: float, what: str) -> float:
    if x < lo:
        if x < lo - CLAMP:
            raise InputError(f"{what}: argument {x!r} below {lo}")
        return lo
    if x > hi:
        if x > hi + CLAMP:
            raise InputError(f"{what}: argument {x!r} above {hi}")
        return hi
    return x


def _minkowski(x: np.ndarray, y: np.ndarray) -> float:
    return float(np.dot(x[:-1], y[:-1]) - x[-1] * y[-1])


@dataclass(frozen=True)
class ModelPoint:
    kappa: float
    coords: tuple

    def __post_init__(self):
        kappa = check_kappa(self.kappa)
        x = np.asarray(self.coords, dtype=float)
        if x.ndim != 1 or x.size == 0:
            raise InputError("coords must be a nonempty vector")
        if kappa > 0:
            if x.size < 2:
                raise InputError("spherical points need n+1 >= 2 coordinates")
            if abs(float(x @ x) - 1.0) > MANIFOLD_TOL:
                raise InputError(f"point {tuple(x)} is not on the unit sphere")
        elif kappa < 0:
            if x.size < 2:
                raise InputError("hyperbolic points need n+1 >= 2 coordinates")
            if abs(_minkowski(x, x) + 1.0) > MANIFOLD_TOL * max(1.0, x[-1] ** 2) or x[-1] <= 0:
                raise InputError(f"point {tuple(x)} is not on the upper hyperboloid sheet")
        object.__setattr__(self, "kappa", kappa)
        object.__setattr__(self, "coords", tuple(float(c) for c in x))

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=float)

    @property
    def dim(self) -> int:
        n = len(self.coords)
        return n if self.kappa == 0 else n - 1


@dataclass(frozen=True)
class TriangleSides:
    """Side lengths a = d(p,q), b = d(p,r), c = d(q,r); gamma sits at p."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        for name in ("a", "b", "c"):
            v = float(getattr(self, name))
            if not math.isfinite(v) or v < 0:
                raise InputError(f"side {name} must be a finite nonnegative length")
            object.__setattr__(self, name, v)

    @property
    def perimeter(self) -> float:
        return self.a + self.b + self.c

    def satisfies_triangle_inequality(self, tol: float = 1e-12) -> bool:
        a, b, c = self.a, self.b, self.c
        scale = tol * max(1.0, a + b + c)
        return a <= b + c + scale and b <= a + c + scale and c <= a + b + scale


def basepoint(kappa: float, n: int = 2) -> ModelPoint:
    """Origin of E^n, or the pole (0,...,0,1) of S^n / H^n."""
    kappa = check_kappa(kappa)
    if kappa == 0:
        return ModelPoint(kappa, (0.0,) * n)
    return ModelPoint(kappa, (0.0,) * n + (1.0,))


def _check_pair(p: ModelPoint, q: ModelPoint):
    if p.kappa != q.kappa:
        raise InputError(f"curvature mismatch: {p.kappa} vs {q.kappa}")
    if len(p.coords) != len(q.coords):
        raise InputError("dimension mismatch")


def distance(p: ModelPoint, q: ModelPoint) -> float:
    _check_pair(p, q)
    x, y = p.array, q.array
    k = p.kappa
    if k == 0:
        return float(np.linalg.norm(x - y))
    if k > 0:
        # 2*atan2(|x-y|, |x+y|) is accurate at both ends of [0, pi]
        ang = 2.0 * math.atan2(float(np.linalg.norm(x - y)), float(np.linalg.norm(x + y)))
        return ang / math.sqrt(k)
    diff = x - y
    q2 = _clamp(_minkowski(diff, diff), 0.0, math.inf, "hyperbolic chord")
    # <x-y|x-y> = 4 sinh^2(d/2)
    return 2.0 * math.asinh(math.sqrt(q2) / 2.0) / math.sqrt(-k)


def _ksin(kappa: float, x: float) -> float:
    """kappa-sine: sin(sqrt(k) x)/sqrt(k), x, or sinh(sqrt(-k) x)/sqrt(-k)."""
    if kappa == 0:
        return x
    s = math.sqrt(abs(kappa))
    if kappa > 0:
        return math.sin(s * x) / s
    return math.sinh(s * x) / s


def _side_from_half_sine(kappa: float, h: float) -> float:
    """Invert h = ksin(c/2) for c."""
    if kappa == 0:
        return 2.0 * h
    s = math.sqrt(abs(kappa))
    if kappa > 0:
        return 2.0 * math.asin(_clamp(s * h, 0.0, 1.0, "spherical half side")) / s
    return 2.0 * math.asinh(s * h) / s


def _opposite_side(kappa: float, a: float, b: float, gamma: float) -> float:
    # no positivity requirement on a, b: also used for cone distances
    h2 = _ksin(kappa, (a - b) / 2.0) ** 2 + _ksin(kappa, a) * _ksin(kappa, b) * math.sin(gamma / 2.0) ** 2
    return _side_from_half_sine(kappa, math.sqrt(max(h2, 0.0)))


def law_of_cosines_side(kappa: float, a: float, b: float, gamma: float) -> float:
    """Length of the side opposite the angle gamma enclosed by sides a and b."""
    kappa = check_kappa(kappa)
    if not (a > 0 and b > 0):
        raise InputError("sides a and b must be positive")
    if not (0.0 <= gamma <= math.pi):
        gamma = _clamp(gamma, 0.0, math.pi, "angle")
    D = diameter(kappa)
    if kappa > 0 and (a >= D or b >= D):
        raise InputError(f"sides must be shorter than the diameter {D}")
    return _opposite_side(kappa, a, b, gamma)


def law_of_cosines_angle(kappa: float, sides: TriangleSides) -> float:
    """Angle between sides a and b, opposite c."""
    kappa = check_kappa(kappa)
    a, b, c = sides.a, sides.b, sides.c
    if a == 0 or b == 0:
        raise InputError("the angle is undefined when a or b vanishes")
    if kappa > 0 and sides.perimeter >= 2 * diameter(kappa):
        raise InputError("perimeter must be below twice the diameter")
    # sin^2(g/2) and cos^2(g/2) up to the common positive factor ksin(a) ksin(b)
    num = _ksin(kappa, (c - a + b) / 2.0) * _ksin(kappa, (c + a - b) / 2.0)
    den = _ksin(kappa, (a + b - c) / 2.0) * _ksin(kappa, (a + b + c) / 2.0)
    scale = _ksin(kappa, a) * _ksin(kappa, b)
    if num < -CLAMP * scale or den < -CLAMP * scale:
        raise InputError(f"no angle in [0, pi] realises sides {(a, b, c)} at kappa={kappa}")
    return 2.0 * math.atan2(math.sqrt(max(num, 0.0)), math.sqrt(max(den, 0.0)))


def _polar(kappa: float, r: float, theta: float) -> ModelPoint:
    """Point at distance r from the basepoint in direction theta (2-dimensional)."""
    if kappa == 0:
        return ModelPoint(0.0, (r * math.cos(theta), r * math.sin(theta)))
    s = math.sqrt(abs(kappa))
    if kappa > 0:
        sr, cr = math.sin(s * r), math.cos(s * r)
    else:
        sr, cr = math.sinh(s * r), math.cosh(s * r)
    return ModelPoint(kappa, (sr * math.cos(theta), sr * math.sin(theta), cr))


def comparison_triangle(kappa: float, sides: TriangleSides) -> tuple[ModelPoint, ModelPoint, ModelPoint]:
    """Points (p, q, r) in M_kappa^2 with d(p,q)=a, d(p,r)=b, d(q,r)=c.

    p is the basepoint, q lies along the first coordinate direction, r in the
    closed upper half.
    """
    kappa = check_kappa(kappa)
    if not sides.satisfies_triangle_inequality():
        raise InputError(f"sides {(sides.a, sides.b, sides.c)} violate the triangle inequality")
    if kappa > 0 and sides.perimeter >= 2 * diameter(kappa):
        raise InputError("perimeter must be below twice the diameter")
    a, b = sides.a, sides.b
    if a == 0 or b == 0:
        gamma = 0.0
    else:
        gamma = law_of_cosines_angle(kappa, sides)
    return basepoint(kappa), _polar(kappa, a, 0.0), _polar(kappa, b, gamma)


def comparison_point(tri: Sequence[ModelPoint], side: tuple[int, int], s: float) -> ModelPoint:
    """Point on the geodesic from tri[i] to tri[j] at arclength s from tri[i]."""
    i, j = side
    p, q = tri[i], tri[j]
    _check_pair(p, q)
    L = distance(p, q)
    if s < 0 or s > L:
        if s < -CLAMP * max(1.0, L) or s > L + CLAMP * max(1.0, L):
            raise InputError(f"arclength {s} outside [0, {L}]")
        s = min(max(s, 0.0), L)
    if L == 0 or s == 0:
        return p
    if s == L:
        return q
    x, y = p.array, q.array
    k = p.kappa
    if k == 0:
        t = s / L
        return ModelPoint(k, tuple((1 - t) * x + t * y))
    rt = math.sqrt(abs(k))
    th, ph = rt * L, rt * s
    if k > 0:
        w0, w1 = math.sin(th - ph) / math.sin(th), math.sin(ph) / math.sin(th)
        z = w0 * x + w1 * y
        z = z / np.linalg.norm(z)
    else:
        w0, w1 = math.sinh(th - ph) / math.sinh(th), math.sinh(ph) / math.sinh(th)
        z = w0 * x + w1 * y
        z = z / math.sqrt(-_minkowski(z, z))
    return ModelPoint(k, tuple(z))
