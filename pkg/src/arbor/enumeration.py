"""
Exact subtree census for arbitrary small graphs.

Every subtree is rooted at its lexicographically smallest edge (whose first
endpoint is the subtree's smallest vertex) and grown from that edge using
only larger edges.  Growth branches on one frontier edge at a time: either the
edge joins the tree, or it is excluded for the rest of that branch.  That
partition makes each subtree appear exactly once, with no dedup set and
memory proportional to the depth of the search.

The counting path and the streaming path share ``_Grower``.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations
from typing import Callable, Iterator, Sequence

from .core import ArborError, DomainError, Edge, Graph, SubtreePolynomial, norm_edge

DEFAULT_BUDGET = 10**8

SubtreeEdgeSet = tuple[Edge, ...]


class BudgetExceeded(ArborError):
    def __init__(self, steps: int, budget: int):
        self.steps = steps
        self.budget = budget
        super().__init__(
            f"subtree census needs more than {budget} extension steps "
            f"(aborted after {steps}); raise the budget to continue"
        )


class _Grower:
    """Rooted include/exclude growth of subtrees over a fixed adjacency."""

    def __init__(self, n: int, adj: Sequence[Sequence[int]], budget: int | None):
        self.n = n
        self.adj = adj
        self.budget = budget
        self.steps = 0

    def grow(
        self,
        root: Edge,
        limit: int,
        emit: Callable[[list[Edge]], None],
        allowed: Callable[[Edge], bool] | None = None,
    ) -> None:
        """Call ``emit`` once per subtree that contains ``root``.

        Only edges passing ``allowed`` may be added; trees stop at ``limit``
        edges.  ``emit`` receives the live edge list and must not keep it.
        """
        adj = self.adj
        budget = self.budget
        in_tree = [False] * self.n
        u, v = root
        in_tree[u] = in_tree[v] = True
        chosen = [root]
        excluded: set[Edge] = set()

        def frontier(w: int) -> list[tuple[int, int]]:
            out = []
            for x in adj[w]:
                if in_tree[x]:
                    continue
                e = (w, x) if w < x else (x, w)
                if e in excluded or (allowed is not None and not allowed(e)):
                    continue
                out.append((w, x))
            return out

        def rec(ext: list[tuple[int, int]]) -> None:
            emit(chosen)
            if len(chosen) >= limit:
                return
            ext = list(ext)
            popped = []
            while ext:
                a, w = ext.pop()
                self.steps += 1
                if budget is not None and self.steps > budget:
                    raise BudgetExceeded(self.steps, budget)
                e = (a, w) if a < w else (w, a)
                in_tree[w] = True
                chosen.append(e)
                child = [f for f in ext if f[1] != w]
                child.extend(frontier(w))
                rec(child)
                chosen.pop()
                in_tree[w] = False
                excluded.add(e)
                popped.append(e)
            excluded.difference_update(popped)

        rec(frontier(u) + frontier(v))


def _limit_for(g: Graph, max_edges: int | None) -> int:
    top = max(g.vertex_count - 1, 0)
    if max_edges is None:
        return top
    if max_edges < 0:
        raise DomainError("max_edges must be nonnegative")
    return min(max_edges, top)


def _count_roots(
    n: int, edges: Sequence[Edge], roots: Sequence[Edge], limit: int, budget: int | None
) -> tuple[list[int], int]:
    g = Graph(n, edges)
    grower = _Grower(n, g.adjacency(), budget)
    counts = [0] * (limit + 1)

    def emit(chosen: list[Edge]) -> None:
        counts[len(chosen)] += 1

    for root in roots:
        grower.grow(root, limit, emit, allowed=lambda e, r=root: e > r)
    return counts, grower.steps


def subtree_counts(
    g: Graph, max_edges: int | None = None, budget: int | None = DEFAULT_BUDGET, jobs: int = 1
) -> list[int]:
    """``counts[k]`` = number of k-edge subtrees for ``k = 0..limit`` (``counts[0] = 0``)."""
    limit = _limit_for(g, max_edges)
    roots = g.sorted_edges()
    if limit == 0 or not roots:
        return [0] * (limit + 1)
    if jobs <= 1 or len(roots) < 2:
        counts, _ = _count_roots(g.vertex_count, roots, roots, limit, budget)
        return counts
    # partitions are interleaved so the expensive small roots spread out
    parts = [roots[i::jobs] for i in range(jobs)]
    total = [0] * (limit + 1)
    steps = 0
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [
            pool.submit(_count_roots, g.vertex_count, roots, part, limit, budget)
            for part in parts
            if part
        ]
        for fut in futures:
            counts, used = fut.result()
            steps += used
            for k, c in enumerate(counts):
                total[k] += c
    if budget is not None and steps > budget:
        raise BudgetExceeded(steps, budget)
    return total


def subtree_polynomial(
    g: Graph,
    max_edges: int | None = None,
    *,
    budget: int | None = DEFAULT_BUDGET,
    include_empty: bool = False,
    jobs: int = 1,
) -> SubtreePolynomial:
    """Exact subtree polynomial s_G(x) of ``g``.

    With ``include_empty`` the constant term counts the single vertices
    (a_0 = n); otherwise it is 0.
    """
    counts = subtree_counts(g, max_edges, budget=budget, jobs=jobs)
    if include_empty:
        counts[0] = g.vertex_count
    if g.vertex_count == 0:
        counts = []
    return SubtreePolynomial(tuple(counts), g.vertex_count)


def local_subtree_polynomial(
    g: Graph, e: Sequence[int], *, budget: int | None = DEFAULT_BUDGET
) -> SubtreePolynomial:
    """Polynomial of the subtrees of ``g`` whose edge set contains ``e``."""
    root = norm_edge(e[0], e[1])
    if root not in g.edges:
        raise DomainError(f"edge {root} is not an edge of the graph")
    limit = _limit_for(g, None)
    counts = [0] * (limit + 1)

    def emit(chosen: list[Edge]) -> None:
        counts[len(chosen)] += 1

    _Grower(g.vertex_count, g.adjacency(), budget).grow(root, limit, emit)
    return SubtreePolynomial(tuple(counts), g.vertex_count)


def enumerate_subtrees(
    g: Graph, k: int, *, budget: int | None = DEFAULT_BUDGET
) -> Iterator[SubtreeEdgeSet]:
    """Yield every k-edge subtree once, in lexicographic order of sorted edge lists.

    The budget is checked by a full counting pass before anything is yielded.
    Output is buffered one root edge at a time: all trees rooted at a smaller
    edge precede all trees rooted at a larger one, so sorting each bucket is
    enough for a global order.
    """
    if not 1 <= k <= g.vertex_count - 1:
        raise DomainError(f"k must lie in 1..{g.vertex_count - 1}, got {k}")
    subtree_counts(g, k, budget=budget)
    return _stream(g, k)


def _stream(g: Graph, k: int) -> Iterator[SubtreeEdgeSet]:
    grower = _Grower(g.vertex_count, g.adjacency(), None)
    for root in g.sorted_edges():
        bucket: list[SubtreeEdgeSet] = []

        def emit(chosen: list[Edge]) -> None:
            if len(chosen) == k:
                bucket.append(tuple(sorted(chosen)))

        grower.grow(root, k, emit, allowed=lambda e, r=root: e > r)
        bucket.sort()
        yield from bucket


def is_subtree(edges: Sequence[Edge], host: Graph | None = None) -> bool:
    """Connected, acyclic, nonempty and (optionally) contained in ``host``."""
    if not edges:
        return False
    if host is not None and not all(norm_edge(*e) in host.edges for e in edges):
        return False
    if len(set(map(lambda e: norm_edge(*e), edges))) != len(edges):
        return False
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return len(parent) == len(edges) + 1


def naive_subtree_polynomial(g: Graph, max_edges: int | None = None) -> SubtreePolynomial:
    """Reference census: test every edge subset for being a tree.

    Exponential in |E|; meant as an independent oracle for small graphs.
    """
    limit = _limit_for(g, max_edges)
    edges = g.sorted_edges()
    counts = Counter()
    for k in range(1, limit + 1):
        counts[k] = sum(1 for subset in combinations(edges, k) if is_subtree(subset))
    coeffs = [0] + [counts[k] for k in range(1, limit + 1)] if g.vertex_count else []
    return SubtreePolynomial(tuple(coeffs), g.vertex_count)
