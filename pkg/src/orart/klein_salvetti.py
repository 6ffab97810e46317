"""Klein-Salvetti complexes: one cell per clique of the naive graph.

Each clique contributes a torus or a generalized Klein bottle, so cell
counts are clique counts.  For complete special graphs the universal cover
is R^N cubulated by unit cubes, with the group acting by
(w, v, k) . (x, y, z) = (x + w, (-1)^k y + v, z + k).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from ._util import InputError
from .cliques import clique_counts, iter_cliques
from .complexes import CubeComplex, SimplicialComplex, cube_vertex_link, gromov_check, is_flag, validate_strict
from .oraag import CliqueGroup, CliqueGroupElement
from .special_graph import SpecialGraph

BOUNDARY_ASSUMPTION = "assumes every mod-2 cellular boundary map vanishes (proved only for complete special graphs)"


@dataclass
class CellSummary:
    cells: list[int]

    @property
    def euler(self) -> int:
        return sum((-1) ** d * c for d, c in enumerate(self.cells))

    def to_json(self):
        return {"cells": self.cells, "euler": self.euler}


def salvetti_cells(G: SpecialGraph) -> CellSummary:
    G.checked()
    return CellSummary(clique_counts(G.naive().adj))


@dataclass
class BettiReport:
    dims: list[int]
    theorem_case: bool
    assumption: str = BOUNDARY_ASSUMPTION

    def to_json(self):
        return {"dims": self.dims, "theorem_case": self.theorem_case, "assumption": self.assumption}


def f2_betti(G: SpecialGraph) -> BettiReport:
    """Mod-2 Betti numbers read off the cell counts (see ``assumption``)."""
    return BettiReport(salvetti_cells(G).cells, G.is_complete())


# -- Cayley balls ----------------------------------------------------------------

@dataclass
class CayleyBall:
    group: CliqueGroup
    radius: int
    elements: list[CliqueGroupElement]
    distance: dict
    edges: list[tuple] = field(default_factory=list)

    def __len__(self):
        return len(self.elements)

    def growth(self) -> list[int]:
        out = [0] * (self.radius + 1)
        for r in self.distance.values():
            out[r] += 1
        return out

    def to_json(self):
        idx = {x: i for i, x in enumerate(self.elements)}
        return {
            "radius": self.radius,
            "size": len(self.elements),
            "growth": self.growth(),
            "elements": [x.to_json() for x in self.elements],
            "edges": [[idx[a], str(g), s, idx[b]] for a, (g, s), b in self.edges],
        }


def _signed_letters(C: CliqueGroup) -> list[tuple]:
    return [(g, s) for g in C.generators for s in (1, -1)]


def cayley_ball(G: SpecialGraph, radius: int, max_radius: int = 8) -> CayleyBall:
    """Word-metric ball of a clique group by breadth-first search."""
    if radius < 0 or radius > max_radius:
        raise InputError(f"radius must lie in [0, {max_radius}]")
    C = CliqueGroup(G)
    letters = _signed_letters(C)
    dist = {C.identity(): 0}
    order = [C.identity()]
    frontier = [C.identity()]
    for r in range(1, radius + 1):
        new = []
        for x in frontier:
            for g, s in letters:
                y = x * C.gen(g, s)
                if y not in dist:
                    dist[y] = r
                    order.append(y)
                    new.append(y)
        frontier = new
    edges = []
    for x in order:
        for g, s in letters:
            y = x * C.gen(g, s)
            if y in dist:
                edges.append((x, (g, s), y))
    return CayleyBall(C, radius, order, dist, edges)


def ball_cube_complex(ball: CayleyBall) -> CubeComplex:
    """Cubes g * prod x_i^{b_i} over pairwise distinct generators, kept when all corners lie in the ball.

    In a clique group all generators are pairwise adjacent, so every such
    corner set spans a cube of the universal cover.
    """
    C = ball.group
    gens = C.generators
    inside = set(ball.distance)
    cells = []
    for x in ball.elements:
        for k in range(0, len(gens) + 1):
            for sub in itertools.combinations(gens, k):
                for signs in itertools.product((1, -1), repeat=k):
                    corners = []
                    for i in range(1 << k):
                        y = x
                        for a in range(k):
                            if (i >> a) & 1:
                                y = y * C.gen(sub[a], signs[a])
                        corners.append(y)
                    if all(c in inside for c in corners):
                        cells.append(tuple(corners))
    # vertex ids are coordinate tuples, which sort deterministically
    return CubeComplex(tuple(c.coords() for c in cell) for cell in cells)


@dataclass
class LinkReport:
    link: SimplicialComplex
    flag: bool
    witness: tuple | None

    def to_json(self):
        return {"link": self.link.to_json(), "flag": self.flag, "witness": self.witness}


def _letter_id(g, s) -> str:
    return f"{g}{'+' if s > 0 else '-'}"


def link_at_identity(G: SpecialGraph) -> LinkReport:
    """Link vertices x^+ and x^-; u^e, w^d span an edge iff u, w are adjacent; simplices are cliques."""
    G.checked()
    adj = G.naive().adj
    verts = [_letter_id(g, s) for g in G.generator_order() for s in (1, -1)]
    simps = []
    for clique in iter_cliques(adj):
        if not clique:
            continue
        for signs in itertools.product((1, -1), repeat=len(clique)):
            simps.append(frozenset(_letter_id(g, s) for g, s in zip(clique, signs)))
    L = SimplicialComplex(simps, verts)
    r = is_flag(L)
    return LinkReport(L, r.flag, r.witness)


def cayley_link_at_identity(G: SpecialGraph) -> SimplicialComplex:
    """Link of the identity in the cube complex of a Cayley ball, relabelled by letters."""
    C = CliqueGroup(G)
    ball = cayley_ball(G, len(C.generators))
    K = ball_cube_complex(ball)
    L = cube_vertex_link(K, C.identity().coords())
    names = {C.gen(g, s).coords(): _letter_id(g, s) for g, s in _signed_letters(C)}
    return SimplicialComplex(frozenset(names[v] for v in s) for s in L.simplices)


def ball_gromov_check(G: SpecialGraph, radius: int):
    """Gromov check at the ball vertices whose full star lies in the ball."""
    C = CliqueGroup(G)
    ball = cayley_ball(G, radius)
    K = ball_cube_complex(ball)
    strict = validate_strict(K)
    interior = [x.coords() for x, r in ball.distance.items() if r <= radius - len(C.generators)]
    return K, strict, gromov_check(K, interior)


# -- quotient by the group action ------------------------------------------------------

@dataclass
class QuotientReport:
    isometric: bool
    action_ok: bool
    orbit_cells: list[int]
    salvetti: list[int]
    max_distortion: float

    @property
    def ok(self) -> bool:
        return self.isometric and self.action_ok and self.orbit_cells == self.salvetti

    def to_json(self):
        return {
            "isometric": self.isometric,
            "action": self.action_ok,
            "orbit_cells": self.orbit_cells,
            "salvetti_cells": self.salvetti,
            "max_distortion": self.max_distortion,
            "ok": self.ok,
        }


def act(x: CliqueGroupElement, p: np.ndarray, m: int, n: int) -> np.ndarray:
    """(w, v, k) . (x, y, z) = (x + w, (-1)^k y + v, z + k); z is absent without a special vertex."""
    p = np.asarray(p, dtype=float)
    out = p.copy()
    out[:m] += x.w
    sgn = -1.0 if x.k % 2 else 1.0
    out[m:m + n] = sgn * p[m:m + n] + np.asarray(x.v, dtype=float)
    if p.shape[0] > m + n:
        out[m + n] += x.k
    return out


def _dim(C: CliqueGroup) -> int:
    return C.m + C.n + (1 if C.special is not None else 0)


def _vertex_element(C: CliqueGroup, c: tuple) -> CliqueGroupElement:
    """The unique g with g . 0 = c."""
    c = tuple(int(round(t)) for t in c)
    return C.element(c[:C.m], c[C.m:C.m + C.n], c[C.m + C.n] if C.special is not None else 0)


def quotient_check(G: SpecialGraph, samples: int = 200, seed: int = 42, tol: float = 1e-9) -> QuotientReport:
    """Isometric action on R^N and orbit classes of unit cubes versus clique counts."""
    C = CliqueGroup(G)
    N, m, n = _dim(C), C.m, C.n
    rng = random.Random(seed)
    nrng = np.random.default_rng(seed)
    gens = [C.gen(g) for g in C.generators]

    def rand_elem():
        x = C.identity()
        for _ in range(rng.randint(0, 6)):
            x = x * (rng.choice(gens) if rng.random() < 0.5 else rng.choice(gens).inverse())
        return x

    worst = 0.0
    action_ok = True
    for _ in range(samples):
        g, h = rand_elem(), rand_elem()
        p, q = nrng.uniform(-3, 3, N), nrng.uniform(-3, 3, N)
        worst = max(worst, abs(np.linalg.norm(act(g, p, m, n) - act(g, q, m, n)) - np.linalg.norm(p - q)))
        if np.max(np.abs(act(g, act(h, p, m, n), m, n) - act(g * h, p, m, n))) > tol:
            action_ok = False

    # cells: (min corner c, direction set D); orbit key = least translate to the origin
    def key(c, D):
        corners = []
        for bits in itertools.product((0, 1), repeat=len(D)):
            v = list(c)
            for a, b in zip(D, bits):
                v[a] += b
            corners.append(tuple(v))
        images = []
        for cv in corners:
            ginv = _vertex_element(C, cv).inverse()
            images.append(tuple(sorted(tuple(int(round(t)) for t in act(ginv, np.array(p, float), m, n)) for p in corners)))
        return min(images)

    counts = [0] * (N + 1)
    for d in range(N + 1):
        seen = set()
        for c in itertools.product((-1, 0, 1), repeat=N):
            for D in itertools.combinations(range(N), d):
                seen.add(key(c, D))
        counts[d] = len(seen)
    return QuotientReport(bool(worst <= tol), action_ok, counts, salvetti_cells(G).cells, float(worst))
