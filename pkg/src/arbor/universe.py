"""Exhaustive small-graph universes, labeled or up to isomorphism."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Iterator

from .core import DomainError, Graph

DEFAULT_CAP = 7


def _refined_cells(n: int, adj: list[set[int]]) -> list[list[int]]:
    """Colour refinement; cells come out in an isomorphism-invariant order."""
    colour = [len(adj[v]) for v in range(n)]
    while True:
        sigs = [(colour[v], tuple(sorted(colour[w] for w in adj[v]))) for v in range(n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(set(new)) == len(set(colour)):
            colour = new
            break
        colour = new
    cells: dict[int, list[int]] = {}
    for v in range(n):
        cells.setdefault(colour[v], []).append(v)
    return [cells[c] for c in sorted(cells)]


def canonical_key(g: Graph) -> tuple[int, int]:
    """``(n, code)`` equal for two graphs exactly when they are isomorphic.

    ``code`` is the smallest adjacency bitmask over the vertex orders that
    respect the refined colour cells.
    """
    n = g.vertex_count
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    cells = _refined_cells(n, adj)
    best = None
    for orders in product(*(permutations(c) for c in cells)):
        pos = {}
        for v in (v for order in orders for v in order):
            pos[v] = len(pos)
        code = 0
        for u, v in g.edges:
            a, b = sorted((pos[u], pos[v]))
            code |= 1 << (a * (2 * n - a - 1) // 2 + b - a - 1)
        if best is None or code < best:
            best = code
    return n, best or 0


@lru_cache(maxsize=None)
def _graphs_up_to_iso(n: int) -> tuple[Graph, ...]:
    if n == 0:
        return (Graph(0),)
    seen: dict[tuple[int, int], Graph] = {}
    for h in _graphs_up_to_iso(n - 1):
        base = list(h.edges)
        new = n - 1
        for r in range(n):
            for nbrs in combinations(range(new), r):
                g = Graph(n, base + [(w, new) for w in nbrs])
                key = canonical_key(g)
                if key not in seen:
                    seen[key] = g
    return tuple(seen[key] for key in sorted(seen, key=lambda k: (bin(k[1]).count("1"), k[1])))


def graphs(n: int, *, up_to_isomorphism: bool = True, connected: bool = True) -> Iterator[Graph]:
    """All graphs on ``n`` vertices, in a deterministic order."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    if up_to_isomorphism:
        source = iter(_graphs_up_to_iso(n))
    else:
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        source = (
            Graph(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])
            for mask in range(1 << len(pairs))
        )
    for g in source:
        if not connected or g.is_connected():
            yield g


def universe(max_n: int, *, up_to_isomorphism: bool = True, min_n: int = 2,
             cap: int = DEFAULT_CAP) -> Iterator[Graph]:
    """Connected graphs with ``min_n..max_n`` vertices."""
    if max_n > cap:
        raise DomainError(f"max_n = {max_n} exceeds the configured cap of {cap}")
    for n in range(min_n, max_n + 1):
        yield from graphs(n, up_to_isomorphism=up_to_isomorphism)
