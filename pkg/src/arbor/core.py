"""
Shared value types: graphs, family builders, edge-list I/O and subtree
polynomials.

Exact rationals are plain :class:`fractions.Fraction` values and counts are
Python ints, so nothing in this package ever rounds until a number is rendered
for display.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

Edge = tuple[int, int]

FAMILIES = ("complete", "complete_bipartite", "cycle", "theta")


class ArborError(Exception):
    """Base class for every error raised by this package."""


class DomainError(ArborError, ValueError):
    """An argument lies outside the domain of the operation."""


class ParseError(ArborError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Labeled simple undirected graph on vertices ``0..vertex_count-1``."""

    vertex_count: int
    edges: frozenset[Edge]

    def __init__(self, vertex_count: int, edges: Iterable[Sequence[int]] = ()):
        if vertex_count < 0:
            raise DomainError("vertex_count must be nonnegative")
        normed: set[Edge] = set()
        for u, v in edges:
            if u == v:
                raise DomainError(f"self-loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise DomainError(f"edge ({u}, {v}) has an endpoint outside 0..{vertex_count - 1}")
            e = norm_edge(u, v)
            if e in normed:
                raise DomainError(f"duplicate edge {e}")
            normed.add(e)
        object.__setattr__(self, "vertex_count", vertex_count)
        object.__setattr__(self, "edges", frozenset(normed))

    @property
    def n(self) -> int:
        return self.vertex_count

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for nbrs in adj:
            nbrs.sort()
        return adj

    def degrees(self) -> list[int]:
        return [len(nbrs) for nbrs in self.adjacency()]

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edges

    def non_edges(self) -> list[Edge]:
        return [
            (u, v)
            for u in range(self.vertex_count)
            for v in range(u + 1, self.vertex_count)
            if (u, v) not in self.edges
        ]

    def add_edge(self, u: int, v: int) -> Graph:
        return Graph(self.vertex_count, [*self.edges, norm_edge(u, v)])

    def remove_edge(self, u: int, v: int) -> Graph:
        e = norm_edge(u, v)
        if e not in self.edges:
            raise DomainError(f"edge {e} not in graph")
        return Graph(self.vertex_count, self.edges - {e})

    def is_connected(self) -> bool:
        if self.vertex_count <= 1:
            return True
        adj = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.vertex_count

    def __repr__(self) -> str:
        return f"Graph({self.vertex_count}, {self.sorted_edges()})"


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------

def complete_graph(n: int) -> Graph:
    if n < 1:
        raise DomainError("complete graph needs n >= 1")
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_bipartite_graph(m: int, n: int) -> Graph:
    """K_{m,n} with parts ``0..m-1`` and ``m..m+n-1``."""
    if m < 1 or n < 1:
        raise DomainError("complete bipartite graph needs m >= 1 and n >= 1")
    return Graph(m + n, [(u, m + v) for u in range(m) for v in range(n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise DomainError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    if n < 1:
        raise DomainError("path needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    if leaves < 1:
        raise DomainError("star needs at least one leaf")
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def theta_graph(a: int, b: int) -> Graph:
    """Hubs 0 and 1 joined by paths of a-1, b-1 and 1 edges.

    theta(n, n) is a (2n-2)-cycle with a chord between antipodal vertices.
    Parameters of 2 would duplicate the hub chord, so both must be >= 3.
    """
    if a < 3 or b < 3:
        raise DomainError("theta needs a >= 3 and b >= 3 (a or b = 2 duplicates the hub edge)")
    edges: list[Edge] = [(0, 1)]
    nxt = 2
    for length in (a - 1, b - 1):
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return Graph(nxt, edges)


def build_family(family: str, params: Sequence[int]) -> Graph:
    """Build a labeled member of one of the supported graph families.

    ``params`` is ``[n]`` for complete and cycle, ``[m, n]`` for
    complete_bipartite and ``[a, b]`` for theta.
    """
    family = family.replace("-", "_")
    if family == "bipartite":
        family = "complete_bipartite"
    arity = {"complete": 1, "cycle": 1, "complete_bipartite": 2, "theta": 2}
    if family not in arity:
        raise DomainError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    if len(params) != arity[family]:
        raise DomainError(f"{family} takes {arity[family]} parameter(s), got {len(params)}")
    if family == "complete":
        return complete_graph(params[0])
    if family == "cycle":
        return cycle_graph(params[0])
    if family == "complete_bipartite":
        return complete_bipartite_graph(params[0], params[1])
    return theta_graph(params[0], params[1])


# ---------------------------------------------------------------------------
# Edge-list text format
# ---------------------------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"``.

    Blank trailing lines are tolerated; everything else must be exact.
    """
    lines = text.split("\n")
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError("empty input", 1)

    def ints(lineno: int) -> tuple[int, int]:
        parts = lines[lineno - 1].split()
        if len(parts) != 2:
            raise ParseError(f"expected two integers, got {lines[lineno - 1]!r}", lineno)
        try:
            x, y = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"expected two integers, got {lines[lineno - 1]!r}", lineno) from None
        if x < 0 or y < 0:
            raise ParseError("negative value", lineno)
        return x, y

    n, m = ints(1)
    if len(lines) - 1 != m:
        raise ParseError(f"header promises {m} edges but {len(lines) - 1} edge lines follow", 1)
    seen: set[Edge] = set()
    for lineno in range(2, m + 2):
        u, v = ints(lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        if u >= n or v >= n:
            raise ParseError(f"endpoint >= n ({n})", lineno)
        e = norm_edge(u, v)
        if e in seen:
            raise ParseError(f"duplicate edge {e[0]} {e[1]}", lineno)
        seen.add(e)
    return Graph(n, seen)


def serialize_edge_list(g: Graph) -> str:
    out = [f"{g.vertex_count} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Subtree polynomial
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubtreePolynomial:
    """Coefficients ``a_0..a_d`` (low to high degree) of s_G(x).

    ``a_0`` is 0 unless the census was asked to count single vertices.
    """

    coefficients: tuple[int, ...]
    vertex_count: int
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        if any(c < 0 for c in coeffs):
            raise DomainError("subtree polynomial coefficients must be nonnegative")
        if self.vertex_count >= 1 and len(coeffs) > self.vertex_count:
            raise DomainError("more coefficients than vertices")
        object.__setattr__(self, "coefficients", coeffs)

    def __getitem__(self, k: int) -> int:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else 0

    def __len__(self) -> int:
        return len(self.coefficients)

    @property
    def degree(self) -> int:
        for k in range(len(self.coefficients) - 1, -1, -1):
            if self.coefficients[k]:
                return k
        return -1

    def sizes(self) -> list[int]:
        """Coefficients for sizes ``1..n-1`` padded with zeros."""
        return [self[k] for k in range(1, max(self.vertex_count, 2))]

    def to_json(self) -> str:
        return json.dumps([str(c) for c in self.coefficients])

    @classmethod
    def from_json(cls, text: str, vertex_count: int | None = None) -> SubtreePolynomial:
        raw = json.loads(text)
        if not isinstance(raw, list) or not all(isinstance(c, str) for c in raw):
            raise ParseError("polynomial JSON must be an array of decimal strings")
        try:
            coeffs = tuple(int(c) for c in raw)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        return cls(coeffs, vertex_count if vertex_count is not None else len(coeffs))

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coefficients):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                x = "x" if k == 1 else f"x^{k}"
                terms.append(x if c == 1 else f"{c}{x}")
        return " + ".join(terms) or "0"


def poly_eval_derivatives(
    poly: SubtreePolynomial | Sequence[int], point: Fraction | int = 1
) -> tuple[Fraction, Fraction, Fraction]:
    """Exact ``(s(x), s'(x), s''(x))`` by a three-lane Horner pass."""
    coeffs = poly.coefficients if isinstance(poly, SubtreePolynomial) else tuple(poly)
    x = Fraction(point)
    s = d1 = d2 = Fraction(0)
    for c in reversed(coeffs):
        d2 = d2 * x + 2 * d1
        d1 = d1 * x + s
        s = s * x + c
    return s, d1, d2


def format_sig(x: Fraction | int, digits: int = 6) -> str:
    """Render an exact rational with ``digits`` significant digits, half-to-even.

    Positional notation only, with trailing zeros kept (``0.679090``).
    """
    x = Fraction(x)
    if x == 0:
        return "0." + "0" * (digits - 1) if digits > 1 else "0"
    sign = "-" if x < 0 else ""
    x = abs(x)
    e = len(str(x.numerator)) - len(str(x.denominator))
    while Fraction(10) ** e > x:
        e -= 1
    while Fraction(10) ** (e + 1) <= x:
        e += 1
    scale = digits - 1 - e
    r = round(x * Fraction(10) ** scale)
    if r == 10**digits:
        r //= 10
        scale -= 1
    s = str(r)
    if scale <= 0:
        body = s + "0" * (-scale)
    elif scale >= digits:
        body = "0." + "0" * (scale - digits) + s
    else:
        body = s[: digits - scale] + "." + s[digits - scale :]
    return sign + body
