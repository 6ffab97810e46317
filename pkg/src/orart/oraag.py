"""Oriented right-angled Artin groups.

A valid special graph G gives the group with one generator per vertex, a
commutator [u, w] for each normal edge and the Klein relator t o t^-1 o for
each special edge (o, t).  Equivalently t o = o^-1 t, so t^a o^b = o^((-1)^a b) t^a.

Word problem.  Give each letter o^e of a word, where o is the origin of
special edges, the *intrinsic sign* e * (-1)^N with N the number of earlier
letters whose generator is a target of o.  Commuting two adjacent letters,
applying a Klein swap or cancelling x x^-1 all preserve intrinsic signs, and
a relator inserted anywhere becomes an ordinary commutator.  So reading words
through intrinsic signs is a bijection between the oriented group and the
ordinary right-angled Artin group on the naive graph, and the classical trace
normal form (cancel, then lexicographically least representative) gives a
canonical form for every valid special graph.

Complete special graphs also have exact arithmetic: the group is
Z^m x (Z^n x| Z) with (w,v,k)(w',v',k') = (w+w', v+(-1)^k v', k+k'), where the
m coordinates belong to normal vertices not starting a special edge, the n
coordinates to the origins of special edges and k to the special vertex.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

from ._util import InputError, OrartError
from .special_graph import SpecialGraph


class RewriteCapExceeded(OrartError):
    """Literal rewriting did not reach a fixpoint within the step cap."""


# -- words ---------------------------------------------------------------------

Letter = tuple  # (generator, +1 | -1)


class Word:
    """Freely reduced word stored as syllables (generator, nonzero exponent)."""

    __slots__ = ("syllables",)

    def __init__(self, syllables: Iterable[tuple] = ()):
        out: list[list] = []
        for g, e in syllables:
            e = int(e)
            if e == 0:
                continue
            if out and out[-1][0] == g:
                out[-1][1] += e
                if out[-1][1] == 0:
                    out.pop()
            else:
                out.append([g, e])
        self.syllables = tuple((g, e) for g, e in out)

    @classmethod
    def from_letters(cls, letters: Iterable[Letter]) -> "Word":
        return cls(letters)

    @classmethod
    def gen(cls, g, e: int = 1) -> "Word":
        return cls([(g, e)])

    @classmethod
    def parse(cls, text: str) -> "Word":
        """'a b^-1 c^2' style; '1' or '' is the empty word."""
        text = text.strip()
        if text in ("", "1"):
            return cls()
        out = []
        for tok in text.replace("*", " ").split():
            m = re.fullmatch(r"([^\^\s]+)(?:\^(-?\d+))?", tok)
            if not m:
                raise InputError(f"cannot parse word token {tok!r}")
            out.append((m.group(1), int(m.group(2) or 1)))
        return cls(out)

    @classmethod
    def from_json(cls, data) -> "Word":
        """List of [generator, exponent] pairs or bare generators (exponent 1)."""
        if isinstance(data, str):
            return cls.parse(data)
        out = []
        for item in data:
            if isinstance(item, (list, tuple)):
                if len(item) != 2:
                    raise InputError(f"word entry {item!r} must be [generator, exponent]")
                out.append((item[0], int(item[1])))
            else:
                out.append((item, 1))
        return cls(out)

    def to_json(self):
        return [[g, e] for g, e in self.syllables]

    def letters(self) -> list[Letter]:
        out = []
        for g, e in self.syllables:
            s = 1 if e > 0 else -1
            out.extend([(g, s)] * abs(e))
        return out

    def inverse(self) -> "Word":
        return Word((g, -e) for g, e in reversed(self.syllables))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.syllables + other.syllables)

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        return Word(base.syllables * abs(n))

    def __len__(self):
        return sum(abs(e) for _, e in self.syllables)

    def __bool__(self):
        return bool(self.syllables)

    def __eq__(self, other):
        return isinstance(other, Word) and self.syllables == other.syllables

    def __hash__(self):
        return hash(self.syllables)

    def generators(self) -> set:
        return {g for g, _ in self.syllables}

    def substitute(self, images: Mapping[Hashable, "Word"]) -> "Word":
        out = Word()
        for g, e in self.syllables:
            if g not in images:
                raise InputError(f"no image for generator {g!r}")
            out = out * (images[g] ** e)
        return out

    def __str__(self):
        if not self.syllables:
            return "1"
        return " ".join(str(g) if e == 1 else f"{g}^{e}" for g, e in self.syllables)

    def __repr__(self):
        return f"Word({str(self)!r})"


def commutator(x, y) -> Word:
    return Word([(x, 1), (y, 1), (x, -1), (y, -1)])


def klein_relator(t, o) -> Word:
    return Word([(t, 1), (o, 1), (t, -1), (o, 1)])


@dataclass
class Presentation:
    generators: tuple
    relators: tuple

    def __post_init__(self):
        self.generators = tuple(self.generators)
        self.relators = tuple(self.relators)
        gens = set(self.generators)
        if len(gens) != len(self.generators):
            raise InputError("duplicate generators")
        for r in self.relators:
            if not r:
                raise InputError("relators must be nonempty")
            if not r.generators() <= gens:
                raise InputError(f"relator {r} uses undeclared generators")

    @classmethod
    def from_json(cls, data: dict) -> "Presentation":
        return cls(tuple(data["generators"]), tuple(Word.from_json(r) for r in data.get("relators", [])))

    def to_json(self):
        return {"generators": list(self.generators), "relators": [r.to_json() for r in self.relators]}

    def __str__(self):
        return f"< {', '.join(map(str, self.generators))} | {', '.join(map(str, self.relators))} >"


def presentation(G: SpecialGraph) -> Presentation:
    """One relator per edge: [u, w] (u < w) for normal, t o t^-1 o for special (o, t)."""
    G.checked()
    rels = [commutator(u, w) for u, w in G.sorted_normal_edges()]
    rels += [klein_relator(t, o) for o, t in G.sorted_special_edges()]
    return Presentation(G.generator_order(), tuple(rels))


# -- normal forms ----------------------------------------------------------------

class _Structure:
    """Per-graph tables used by the normalizers."""

    def __init__(self, G: SpecialGraph):
        G.checked()
        self.G = G
        self.order = G.generator_order()
        self.rank = {g: i for i, g in enumerate(self.order)}
        self.adj = G.naive().adj
        self.targets = {v: frozenset(t for o, t in G.special_edges if o == v) for v in G.vertices}

    def check_word(self, w: Word):
        for g in w.generators():
            if g not in self.rank:
                raise InputError(f"generator {g!r} is not a vertex of the graph")

    def to_intrinsic(self, letters: Sequence[Letter]) -> list[Letter]:
        seen: dict = {}
        out = []
        for g, s in letters:
            flips = sum(seen.get(t, 0) for t in self.targets[g])
            out.append((g, s if flips % 2 == 0 else -s))
            seen[g] = seen.get(g, 0) + 1
        return out

    from_intrinsic = to_intrinsic  # the sign twist is an involution


def _trace_reduce(letters: list[Letter], adj, involutive: bool = False) -> list[Letter]:
    """Cancel letter pairs x^s ... x^-s separated only by letters commuting with x."""
    out: list[Letter] = []
    for g, s in letters:
        i = len(out) - 1
        while i >= 0 and out[i][0] != g and out[i][0] in adj[g]:
            i -= 1
        if i >= 0 and out[i][0] == g and (involutive or out[i][1] == -s):
            del out[i]
        else:
            out.append((g, s))
    return out


def _trace_lex(letters: list[Letter], adj, rank) -> list[Letter]:
    """Least representative of the trace: repeatedly emit the least letter that can move to the front."""
    rest = list(letters)
    out = []
    while rest:
        best = None
        blockers: set = set()
        for i, (g, s) in enumerate(rest):
            if g not in blockers and (best is None or rank[g] < rank[rest[best][0]]):
                best = i
            # everything later with a generator not commuting with g is blocked
            blockers.add(g)
            blockers.update(h for h in rank if h != g and h not in adj[g])
            if len(blockers) == len(rank):
                break
        out.append(rest.pop(best))
    return out


def normalize(G: SpecialGraph, word: Word, _struct: _Structure | None = None) -> Word:
    """Canonical form: equal in the group iff equal as words."""
    st = _struct or _Structure(G)
    st.check_word(word)
    intr = st.to_intrinsic(word.letters())
    red = _trace_reduce(intr, st.adj)
    lex = _trace_lex(red, st.adj, st.rank)
    return Word(st.from_intrinsic(lex))


class Normalizer:
    """Caches graph tables for repeated normalization."""

    def __init__(self, G: SpecialGraph):
        self.G = G
        self.struct = _Structure(G)

    def __call__(self, word: Word) -> Word:
        return normalize(self.G, word, self.struct)

    def equal(self, u: Word, v: Word) -> bool:
        return self(u * v.inverse()) == Word()


def exactness_class(G: SpecialGraph) -> str:
    """'complete', 'in-star' (all special edges share an origin or a target) or 'general'."""
    if G.is_complete():
        return "complete"
    es = G.special_edges
    if es and (len({o for o, _ in es}) == 1 or len({t for _, t in es}) == 1):
        return "in-star"
    return "general"


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: Word

    def __str__(self):
        return f"{self.lhs} -> {self.rhs}"


def rewrite_rules(G: SpecialGraph) -> list[RewriteRule]:
    """Length-two rules: free reduction, and for adjacent x > y, x^e y^d -> y^d' x^e."""
    st = _Structure(G)
    rules = []
    for g in st.order:
        for s in (1, -1):
            rules.append(RewriteRule(Word.from_letters([(g, s), (g, -s)]), Word()))
    for x, y in itertools.permutations(st.order, 2):
        if st.rank[x] <= st.rank[y] or y not in st.adj[x]:
            continue
        for e, d in itertools.product((1, -1), repeat=2):
            d2 = -d if x in st.targets[y] else d
            rules.append(RewriteRule(Word([(x, e), (y, d)]), Word([(y, d2), (x, e)])))
    return rules


def rewrite(G: SpecialGraph, word: Word, cap: int | None = None) -> Word:
    """Apply the length-two rules left to right until nothing applies.

    Canonical for complete special graphs; for other graphs the fixpoint is
    a valid but not necessarily unique representative.
    """
    st = _Structure(G)
    st.check_word(word)
    letters = word.letters()
    n = len(letters)
    cap = 10 * n * n + 10 if cap is None else cap
    steps = 0
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(letters) - 1:
            (x, e), (y, d) = letters[i], letters[i + 1]
            if x == y and e == -d:
                del letters[i:i + 2]
                i = max(i - 1, 0)
            elif x != y and st.rank[x] > st.rank[y] and y in st.adj[x]:
                d2 = -d if x in st.targets[y] else d
                letters[i], letters[i + 1] = (y, d2), (x, e)
                i += 1
            else:
                i += 1
                continue
            changed = True
            steps += 1
            if steps > cap:
                raise RewriteCapExceeded(f"no fixpoint after {cap} rewriting steps")
    return Word(letters)


# -- clique groups ---------------------------------------------------------------

@dataclass(frozen=True)
class CliqueGroupElement:
    w: tuple
    v: tuple
    k: int

    def __mul__(self, other: "CliqueGroupElement") -> "CliqueGroupElement":
        if len(self.w) != len(other.w) or len(self.v) != len(other.v):
            raise InputError("clique elements of different shapes")
        sgn = -1 if self.k % 2 else 1
        return CliqueGroupElement(
            tuple(a + b for a, b in zip(self.w, other.w)),
            tuple(a + sgn * b for a, b in zip(self.v, other.v)),
            self.k + other.k,
        )

    def inverse(self) -> "CliqueGroupElement":
        sgn = -1 if self.k % 2 else 1
        return CliqueGroupElement(tuple(-a for a in self.w), tuple(-sgn * a for a in self.v), -self.k)

    def is_identity(self) -> bool:
        return self.k == 0 and not any(self.w) and not any(self.v)

    def coords(self) -> tuple:
        return self.w + self.v + (self.k,)

    def to_json(self):
        return {"w": list(self.w), "v": list(self.v), "k": self.k}

    def __repr__(self):
        return f"({', '.join(map(str, self.w))}; {', '.join(map(str, self.v))}; {self.k})"


clique_mul = CliqueGroupElement.__mul__


class CliqueGroup:
    """Exact model of the group of a complete special graph."""

    def __init__(self, G: SpecialGraph):
        G.checked()
        if not G.is_complete():
            raise InputError("clique arithmetic needs a complete special graph")
        self.G = G
        origins = {o for o, _ in G.special_edges}
        self.w_gens = tuple(v for v in G.normal_vertices if v not in origins)
        self.v_gens = tuple(v for v in G.normal_vertices if v in origins)
        sp = G.special_vertices
        self.special = sp[0] if sp else None
        self.m, self.n = len(self.w_gens), len(self.v_gens)
        self._gen = {}
        for i, g in enumerate(self.w_gens):
            self._gen[g] = self.element(w={i: 1})
        for i, g in enumerate(self.v_gens):
            self._gen[g] = self.element(v={i: 1})
        if self.special is not None:
            self._gen[self.special] = self.element(k=1)

    @property
    def generators(self) -> tuple:
        return self.G.generator_order()

    @property
    def rank(self) -> int:
        return len(self.G.vertices)

    def element(self, w=None, v=None, k: int = 0) -> CliqueGroupElement:
        def vec(spec, n):
            if spec is None:
                return (0,) * n
            if isinstance(spec, dict):
                return tuple(spec.get(i, 0) for i in range(n))
            spec = tuple(int(x) for x in spec)
            if len(spec) != n:
                raise InputError(f"expected {n} coordinates")
            return spec
        if k and self.special is None:
            raise InputError("no special vertex: k must be 0")
        return CliqueGroupElement(vec(w, self.m), vec(v, self.n), int(k))

    def identity(self) -> CliqueGroupElement:
        return self.element()

    def gen(self, g, e: int = 1) -> CliqueGroupElement:
        x = self._gen[g]
        return self.power(x, e)

    def power(self, x: CliqueGroupElement, e: int) -> CliqueGroupElement:
        base = x if e >= 0 else x.inverse()
        out = self.identity()
        for _ in range(abs(e)):
            out = out * base
        return out

    def word_to_clique(self, word: Word) -> CliqueGroupElement:
        out = self.identity()
        for g, e in word.syllables:
            if g not in self._gen:
                raise InputError(f"generator {g!r} not in the clique")
            out = out * self.gen(g, e)
        return out

    def clique_to_word(self, x: CliqueGroupElement) -> Word:
        """Normal vertices in generator order with their exponents, then the special vertex."""
        coord = dict(zip(self.w_gens, x.w))
        coord.update(zip(self.v_gens, x.v))
        syl = [(g, coord[g]) for g in self.G.normal_vertices]
        if self.special is not None:
            syl.append((self.special, x.k))
        return Word(syl)

    def commutes(self, x: CliqueGroupElement, y: CliqueGroupElement) -> bool:
        return x * y == y * x


def word_to_clique(G: SpecialGraph, word: Word) -> CliqueGroupElement:
    return CliqueGroup(G).word_to_clique(word)


def clique_to_word(G: SpecialGraph, x: CliqueGroupElement) -> Word:
    return CliqueGroup(G).clique_to_word(x)


def word_problem_clique(G: SpecialGraph, word: Word) -> bool:
    return CliqueGroup(G).word_to_clique(word).is_identity()


@dataclass
class CenterReport:
    generators: list[CliqueGroupElement]
    words: list[Word]
    central_generators: list
    witnesses: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "center_generators": [str(w) for w in self.words],
            "central_group_generators": list(self.central_generators),
            "non_central_witnesses": {str(g): str(h) for g, h in self.witnesses.items()},
        }


def center_clique(G: SpecialGraph) -> CenterReport:
    """Z^m x <a^2> when there is a special edge, the whole (free abelian) group otherwise.

    Every returned element is checked to commute with all generators, and every
    non-central generator comes with a generator it fails to commute with.
    """
    C = CliqueGroup(G)
    if C.n == 0:
        cen = [C.gen(g) for g in C.generators]
    else:
        cen = [C.gen(g) for g in C.w_gens] + [C.gen(C.special, 2)]
    gens = [C.gen(g) for g in C.generators]
    for z in cen:
        for x in gens:
            if not C.commutes(z, x):
                raise AssertionError(f"{z} does not commute with {x}")
    central, witnesses = [], {}
    for g in C.generators:
        bad = next((h for h in C.generators if not C.commutes(C.gen(g), C.gen(h))), None)
        if bad is None:
            central.append(g)
        else:
            witnesses[g] = bad
    return CenterReport(cen, [C.clique_to_word(z) for z in cen], central, witnesses)


# -- abelianization ----------------------------------------------------------------

def smith_normal_form(A) -> list[int]:
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix."""
    M = [[int(x) for x in row] for row in np.asarray(A, dtype=object).tolist()] if len(A) else []
    if not M or not M[0]:
        return []
    rows, cols = len(M), len(M[0])
    diag = []
    t = 0
    while t < min(rows, cols):
        nz = [(abs(M[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if M[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        M[t], M[pi] = M[pi], M[t]
        for row in M:
            row[t], row[pj] = row[pj], row[t]
        while True:
            done = True
            for i in range(t + 1, rows):
                q = M[i][t] // M[t][t]
                if q:
                    M[i] = [a - q * b for a, b in zip(M[i], M[t])]
                if M[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = M[t][j] // M[t][t]
                if q:
                    for row in M:
                        row[j] -= q * row[t]
                if M[t][j]:
                    done = False
            if done:
                # divisibility: fold in any entry not divisible by the pivot
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if M[i][j] % M[t][t]), None)
                if bad is None:
                    break
                M[t] = [a + b for a, b in zip(M[t], M[bad[0]])]
                continue
            # move the smallest nonzero entry of row/column t to the pivot
            cand = [(abs(M[i][t]), i, t) for i in range(t, rows) if M[i][t]]
            cand += [(abs(M[t][j]), t, j) for j in range(t, cols) if M[t][j]]
            _, pi, pj = min(cand)
            M[t], M[pi] = M[pi], M[t]
            for row in M:
                row[t], row[pj] = row[pj], row[t]
        diag.append(abs(M[t][t]))
        t += 1
    return diag


@dataclass
class AbelianGroup:
    free_rank: int
    torsion: list[int]

    def __str__(self):
        parts = (["Z"] if self.free_rank == 1 else [f"Z^{self.free_rank}"] if self.free_rank else [])
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        return {"free_rank": self.free_rank, "torsion": self.torsion, "text": str(self)}


def relation_matrix(P: Presentation) -> list[list[int]]:
    idx = {g: i for i, g in enumerate(P.generators)}
    rows = []
    for r in P.relators:
        row = [0] * len(P.generators)
        for g, e in r.syllables:
            row[idx[g]] += e
        rows.append(row)
    return rows


def abelianize(P: Presentation) -> AbelianGroup:
    rows = relation_matrix(P)
    d = smith_normal_form(rows) if rows else []
    return AbelianGroup(len(P.generators) - len(d), [x for x in d if x != 1])


def abelianization(G: SpecialGraph) -> AbelianGroup:
    return abelianize(presentation(G))


# -- right-angled Coxeter quotient -------------------------------------------------

@dataclass
class RACGResult:
    presentation: Presentation
    order: int | None

    def to_json(self):
        return {"presentation": self.presentation.to_json(), "order": self.order}


def racg_normal_form(G: SpecialGraph, word: Word) -> Word:
    """Canonical form in the Coxeter group: trace normal form with x x = 1."""
    st = _Structure(G)
    letters = [(g, 1) for g, _ in word.letters()]
    red = _trace_reduce(letters, st.adj, involutive=True)
    return Word(_trace_lex(red, st.adj, st.rank))


def racg_projection(G: SpecialGraph, enumerate_cap: int = 1 << 16) -> RACGResult:
    """Coxeter presentation v^2, [u, w] on the naive graph; order by enumeration when complete."""
    G.checked()
    gens = G.generator_order()
    rels = [Word.gen(v, 2) for v in gens]
    rels += [commutator(u, w) for u, w in G.naive().sorted_edges()]
    P = Presentation(gens, tuple(rels))
    order = None
    if G.is_complete():
        seen = {Word()}
        frontier = [Word()]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = racg_normal_form(G, x * Word.gen(g))
                    if y not in seen:
                        seen.add(y)
                        new.append(y)
            if len(seen) > enumerate_cap:
                raise OrartError("Coxeter group enumeration exceeded its cap")
            frontier = new
        order = len(seen)
    return RACGResult(P, order)


def racg_image(word: Word) -> Word:
    """Image under G -> W as a word (exponents mod 2, unreduced)."""
    return Word((g, e % 2) for g, e in word.syllables)


# -- homomorphisms -----------------------------------------------------------------

@dataclass
class HomResult:
    ok: bool
    failing_relator: Word | None = None
    image: Word | None = None
    exactness: str = "complete"

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {
            "homomorphism": self.ok,
            "failing_relator": None if self.failing_relator is None else str(self.failing_relator),
            "normalized_image": None if self.image is None else str(self.image),
            "target_class": self.exactness,
        }


def verify_hom(src: Presentation, images: Mapping[Hashable, Word], target: SpecialGraph) -> HomResult:
    """Check that generator images kill every relator of ``src`` in the target group."""
    missing = [g for g in src.generators if g not in images]
    if missing:
        raise InputError(f"no image for generators {missing}")
    N = Normalizer(target)
    cls = exactness_class(target)
    for g in src.generators:
        N.struct.check_word(images[g])
    for r in src.relators:
        img = N(r.substitute(images))
        if img:
            return HomResult(False, r, img, cls)
    return HomResult(True, exactness=cls)


def compose(f: Mapping[Hashable, Word], g: Mapping[Hashable, Word]) -> dict:
    """(g after f): x -> g(f(x))."""
    return {x: w.substitute(g) for x, w in f.items()}


def identity_on_generators(f: Mapping[Hashable, Word], G: SpecialGraph) -> dict:
    """Per generator: does f(x) normalize to x?"""
    N = Normalizer(G)
    return {x: N(f[x]) == Word.gen(x) for x in G.generator_order()}


# -- classical RAAG inside the clique group ---------------------------------------

@dataclass
class EmbeddingReport:
    injective_on_box: bool
    images_in_kernel: bool
    index: int
    racg_order: int
    box: int

    @property
    def ok(self) -> bool:
        return self.injective_on_box and self.images_in_kernel and self.index == self.racg_order

    def to_json(self):
        return {
            "injective_on_box": self.injective_on_box,
            "images_in_kernel": self.images_in_kernel,
            "index": self.index,
            "coxeter_order": self.racg_order,
            "box": self.box,
            "exact": self.ok,
        }


def embedding_index_check(G: SpecialGraph, box: int = 2) -> EmbeddingReport:
    """Generators of Z^|V| go to squares of generators.

    Checks distinct images on [-box, box]^|V|, that every image dies in the
    Coxeter quotient, and counts cosets of the image by breadth-first search
    over the clique group (membership: all coordinates even).
    """
    C = CliqueGroup(G)
    gens = C.generators
    sq = [C.gen(g, 2) for g in gens]

    def f(coefs):
        out = C.identity()
        for x, c in zip(sq, coefs):
            out = out * C.power(x, c)
        return out

    images = {}
    injective = True
    for coefs in itertools.product(range(-box, box + 1), repeat=len(gens)):
        y = f(coefs)
        if y in images:
            injective = False
        images[y] = coefs
    in_kernel = all(not racg_image(C.clique_to_word(y)).syllables for y in images)

    def in_image(x: CliqueGroupElement) -> bool:
        return all(c % 2 == 0 for c in x.coords())

    reps: list[CliqueGroupElement] = []
    seen = {C.identity()}
    frontier = [C.identity()]
    gen_elems = [C.gen(g, s) for g in gens for s in (1, -1)]
    radius = 0
    while frontier and radius <= len(gens) + 1:
        for x in frontier:
            if not any(in_image(r.inverse() * x) for r in reps):
                reps.append(x)
        new = []
        for x in frontier:
            for s in gen_elems:
                y = x * s
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
        radius += 1
    order = racg_projection(G).order
    return EmbeddingReport(injective, in_kernel, len(reps), order, box)
