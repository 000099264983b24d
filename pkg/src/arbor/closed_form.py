"""Closed-form subtree counts for complete, complete bipartite and cycle graphs."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .core import DomainError, SubtreePolynomial


@dataclass(frozen=True)
class CountVector:
    """Subtree counts ``counts[k-1] = a_k`` for ``k = 1..len(counts)``."""

    counts: tuple[int, ...]
    family: str
    params: tuple[int, ...]
    vertex_count: int

    def __getitem__(self, k: int) -> int:
        # 1-based by edge count, to read like a_k
        if 1 <= k <= len(self.counts):
            return self.counts[k - 1]
        return 0

    def __len__(self) -> int:
        return len(self.counts)

    def __iter__(self):
        return iter(self.counts)

    @property
    def top(self) -> int:
        return self.counts[-1]

    def to_polynomial(self) -> SubtreePolynomial:
        return SubtreePolynomial((0, *self.counts), self.vertex_count)


def complete_counts(n: int) -> CountVector:
    """a_k = C(n, k+1) (k+1)^(k-1): pick the k+1 vertices, then a Cayley tree on them."""
    if n < 2:
        raise DomainError("complete_counts needs n >= 2")
    counts = tuple(comb(n, k + 1) * (k + 1) ** (k - 1) for k in range(1, n))
    return CountVector(counts, "complete", (n,), n)


def complete_local_counts(n: int) -> CountVector:
    """Subtrees of K_n that contain one fixed edge, by size.

    A tree of size k+1 through the edge uses k of the other n-2 vertices; the
    count is 2 C(n-2, k) (k+2)^(k-1), which for k = 0 is the edge alone.
    """
    if n < 2:
        raise DomainError("complete_local_counts needs n >= 2")
    counts = [1]
    counts.extend(2 * comb(n - 2, k) * (k + 2) ** (k - 1) for k in range(1, n - 1))
    return CountVector(tuple(counts), "complete_local", (n,), n)


def bipartite_counts(m: int, n: int) -> CountVector:
    """Subtrees of K_{m,n} by size.

    A tree meeting i vertices on one side and j on the other is one of the
    i^(j-1) j^(i-1) spanning trees of K_{i,j}.
    """
    if m < 1 or n < 1:
        raise DomainError("bipartite_counts needs m >= 1 and n >= 1")
    counts = []
    for k in range(1, m + n):
        total = 0
        for i in range(max(1, k + 1 - n), min(m, k) + 1):
            j = k + 1 - i
            total += comb(m, i) * comb(n, j) * i ** (j - 1) * j ** (i - 1)
        counts.append(total)
    return CountVector(tuple(counts), "complete_bipartite", (m, n), m + n)


def cycle_counts(n: int) -> CountVector:
    """Every proper subtree of C_n is a path, and there are n paths of each length."""
    if n < 3:
        raise DomainError("cycle_counts needs n >= 3")
    return CountVector((n,) * (n - 1), "cycle", (n,), n)


def family_counts(family: str, params: tuple[int, ...] | list[int]) -> CountVector | None:
    """Closed form for a family, or ``None`` when there is none (theta)."""
    family = family.replace("-", "_")
    if family == "complete":
        return complete_counts(*params)
    if family in ("complete_bipartite", "bipartite"):
        return bipartite_counts(*params)
    if family == "cycle":
        return cycle_counts(*params)
    return None
