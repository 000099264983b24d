"""
Seeded random subtrees under the uniform and size-weighted measures.

Sampling is two-stage.  The size k is drawn exactly from the census weights
(a_k for uniform, k a_k for weighted) by comparing one uniform big-integer
draw against cumulative integer thresholds.  A uniform tree of that size is
then drawn: in K_n from a random (k+1)-subset and a random Pruefer sequence,
elsewhere by rank in the canonical enumeration order.
"""

from __future__ import annotations

import heapq
import json
import random
from bisect import bisect_right
from dataclasses import dataclass
from itertools import accumulate
from typing import Iterator, Sequence

from .closed_form import complete_counts
from .core import DomainError, Edge, Graph, norm_edge
from .enumeration import DEFAULT_BUDGET, SubtreeEdgeSet, enumerate_subtrees, subtree_counts

RNG_ID = "python-random/MT19937"
MEASURES = ("uniform", "weighted")


@dataclass(frozen=True)
class SampleSpec:
    graph: str
    measure: str
    seed: int
    count: int

    def __post_init__(self):
        if self.measure not in MEASURES:
            raise DomainError(f"measure must be one of {MEASURES}, got {self.measure!r}")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be an unsigned 64-bit integer")
        if self.count < 1:
            raise DomainError("count must be >= 1")

    def header(self) -> str:
        return json.dumps(
            {"graph": self.graph, "measure": self.measure, "seed": self.seed,
             "count": self.count, "rng": RNG_ID},
            sort_keys=True,
        )


@dataclass(frozen=True)
class SampledTree:
    edges: SubtreeEdgeSet
    measure: str
    seed: int
    draw: int

    @property
    def size(self) -> int:
        return len(self.edges)

    def log_line(self) -> str:
        return f"{self.size}\t" + " ".join(f"{u}-{v}" for u, v in self.edges)


def prufer_decode(seq: Sequence[int], labels: Sequence[int]) -> SubtreeEdgeSet:
    """The labeled tree on ``labels`` whose Pruefer sequence is ``seq``."""
    labels = list(labels)
    if len(labels) < 2:
        raise DomainError("need at least two labels")
    if len(set(labels)) != len(labels):
        raise DomainError("labels must be distinct")
    if len(seq) != len(labels) - 2:
        raise DomainError(f"sequence length must be {len(labels) - 2}, got {len(seq)}")
    degree = {v: 1 for v in labels}
    for v in seq:
        if v not in degree:
            raise DomainError(f"label {v} is not among the tree's labels")
        degree[v] += 1
    leaves = [v for v in labels if degree[v] == 1]
    heapq.heapify(leaves)
    edges: list[Edge] = []
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append(norm_edge(leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u, w = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append(norm_edge(u, w))
    return tuple(sorted(edges))


def _weights(counts: Sequence[int], measure: str) -> list[int]:
    """Weights for sizes 1..len(counts)."""
    if measure == "uniform":
        return list(counts)
    return [k * c for k, c in enumerate(counts, start=1)]


def _draw_size(rng: random.Random, thresholds: list[int]) -> int:
    return bisect_right(thresholds, rng.randrange(thresholds[-1])) + 1


def sample_complete(n: int, spec: SampleSpec) -> Iterator[SampledTree]:
    if n < 2:
        raise DomainError("sampling K_n needs n >= 2")
    thresholds = list(accumulate(_weights(complete_counts(n), spec.measure)))
    rng = random.Random(spec.seed)
    vertices = range(n)
    for i in range(spec.count):
        k = _draw_size(rng, thresholds)
        chosen = sorted(rng.sample(vertices, k + 1))
        seq = [chosen[rng.randrange(k + 1)] for _ in range(k - 1)]
        yield SampledTree(prufer_decode(seq, chosen), spec.measure, spec.seed, i)


def sample_generic(
    g: Graph, spec: SampleSpec, *, budget: int | None = DEFAULT_BUDGET
) -> Iterator[SampledTree]:
    """Exact sampling on any graph whose census fits the budget."""
    counts = subtree_counts(g, budget=budget)[1:]
    weights = _weights(counts, spec.measure)
    if not any(weights):
        raise DomainError("graph has no subtrees with edges")
    thresholds = list(accumulate(weights))
    rng = random.Random(spec.seed)
    # rank -> tree via the canonical order, materialized once per size
    by_size: dict[int, list[SubtreeEdgeSet]] = {}
    for i in range(spec.count):
        k = _draw_size(rng, thresholds)
        rank = rng.randrange(counts[k - 1])
        if k not in by_size:
            by_size[k] = list(enumerate_subtrees(g, k, budget=budget))
        yield SampledTree(by_size[k][rank], spec.measure, spec.seed, i)


def draw_log(spec: SampleSpec, draws: Iterator[SampledTree]) -> Iterator[str]:
    yield spec.header()
    for d in draws:
        yield d.log_line()
