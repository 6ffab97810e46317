"""Clique enumeration on finite simple graphs given as adjacency maps."""

from __future__ import annotations

from typing import Hashable, Iterable, Iterator, Mapping

from ._util import sort_key

Adjacency = Mapping[Hashable, frozenset]


def adjacency(vertices: Iterable[Hashable], edges: Iterable[tuple]) -> dict:
    adj = {v: set() for v in vertices}
    for u, w in edges:
        if u == w:
            continue
        adj[u].add(w)
        adj[w].add(u)
    return {v: frozenset(n) for v, n in adj.items()}


def maximal_cliques(adj: Adjacency) -> list[tuple]:
    """Bron-Kerbosch with Tomita pivoting.

    Output is deterministic: each clique sorted by ``sort_key``, the list
    sorted lexicographically.
    """
    out: list[tuple] = []

    def expand(R: list, P: set, X: set):
        if not P and not X:
            out.append(tuple(sorted(R, key=sort_key)))
            return
        # pivot maximising |P & N(u)|, ties by vertex order
        pivot = max(sorted(P | X, key=sort_key), key=lambda u: len(P & adj[u]))
        for v in sorted(P - adj[pivot], key=sort_key):
            expand(R + [v], P & adj[v], X & adj[v])
            P = P - {v}
            X = X | {v}

    expand([], set(adj), set())
    out.sort(key=lambda c: [sort_key(x) for x in c])
    return out


def iter_cliques(adj: Adjacency) -> Iterator[tuple]:
    """All cliques including the empty one, each as a sorted tuple."""
    order = sorted(adj, key=sort_key)

    def grow(clique: tuple, cand: list):
        yield clique
        for i, v in enumerate(cand):
            yield from grow(clique + (v,), [w for w in cand[i + 1:] if w in adj[v]])

    yield from grow((), order)


def clique_counts(adj: Adjacency) -> list[int]:
    """Entry d counts the cliques with d vertices; entry 0 is the empty clique."""
    counts: list[int] = []
    for c in iter_cliques(adj):
        while len(counts) <= len(c):
            counts.append(0)
        counts[len(c)] += 1
    return counts
