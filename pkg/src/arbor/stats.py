"""
Spanning probabilities and subtree densities as exact rationals.

For counts a_k of k-edge subtrees of a graph on n vertices, with
A = sum a_k, B = sum k a_k and C = sum k^2 a_k:

    p    = a_{n-1} / A               uniform chance the subtree spans
    q    = (n-1) a_{n-1} / B         same, each subtree weighted by its size
    mu_p = B / ((n-1) A)             expected size / (n-1), uniform
    mu_q = C / ((n-1) B)             expected size / (n-1), size-weighted
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .closed_form import CountVector, complete_local_counts
from .core import DomainError, SubtreePolynomial, format_sig, poly_eval_derivatives


def _by_size(counts: CountVector | SubtreePolynomial | Sequence[int]) -> dict[int, int]:
    if isinstance(counts, SubtreePolynomial):
        return dict(enumerate(counts.coefficients))
    # CountVector and bare sequences both start at size 1
    return {k: int(c) for k, c in enumerate(counts, start=1)}


def ratio_json(value: Fraction, raw: tuple[int, int] | None = None) -> dict:
    out = {"num": str(value.numerator), "den": str(value.denominator)}
    if raw is not None:
        out["raw"] = f"{raw[0]}/{raw[1]}"
    out["dec"] = format_sig(value)
    return out


@dataclass(frozen=True)
class StatsReport:
    n: int
    A: int
    B: int
    C: int
    spanning: int

    @property
    def p(self) -> Fraction:
        return Fraction(self.spanning, self.A)

    @property
    def q(self) -> Fraction:
        return Fraction((self.n - 1) * self.spanning, self.B)

    @property
    def mu_p(self) -> Fraction:
        return Fraction(self.B, (self.n - 1) * self.A)

    @property
    def mu_q(self) -> Fraction:
        return Fraction(self.C, (self.n - 1) * self.B)

    def raw(self) -> dict[str, tuple[int, int]]:
        """The four statistics as unreduced ``(numerator, denominator)`` pairs."""
        return {
            "p": (self.spanning, self.A),
            "q": ((self.n - 1) * self.spanning, self.B),
            "mu_p": (self.B, (self.n - 1) * self.A),
            "mu_q": (self.C, (self.n - 1) * self.B),
        }

    def as_dict(self) -> dict:
        raw = self.raw()
        out: dict = {"n": self.n, "A": str(self.A), "B": str(self.B)}
        for name in ("p", "q", "mu_p", "mu_q"):
            out[name] = ratio_json(getattr(self, name), raw[name])
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict())


def global_stats(counts: CountVector | SubtreePolynomial | Sequence[int], n: int) -> StatsReport:
    """The four statistics for a census of a graph on ``n`` vertices.

    ``counts`` is a :class:`CountVector`, a bare sequence ``a_1, a_2, ...``,
    or a :class:`SubtreePolynomial` (whose constant term, if set, counts as
    size-0 subtrees: they add to A but carry no weight).
    """
    if n < 2:
        raise DomainError("statistics need n >= 2")
    sizes = _by_size(counts)
    A = sum(sizes.values())
    B = sum(k * c for k, c in sizes.items())
    C = sum(k * k * c for k, c in sizes.items())
    if A == 0 or B == 0:
        raise DomainError("census has no subtrees with edges")
    return StatsReport(n=n, A=A, B=B, C=C, spanning=sizes.get(n - 1, 0))


def density_from_polynomial(poly: SubtreePolynomial, n: int) -> tuple[Fraction, Fraction]:
    """(mu_p, mu_q) from s(1), s'(1) and s''(1)."""
    if n < 2:
        raise DomainError("densities need n >= 2")
    s, d1, d2 = poly_eval_derivatives(poly, 1)
    if d1 == 0:
        raise DomainError("polynomial has no terms of positive degree")
    return d1 / ((n - 1) * s), (d1 + d2) / ((n - 1) * d1)


@dataclass(frozen=True)
class LocalStatsReport:
    n: int
    p_local: Fraction
    q_local: Fraction
    mu_p_local: Fraction
    mu_q_local: Fraction

    def as_dict(self) -> dict:
        out: dict = {"n": self.n}
        for name in ("p_local", "q_local", "mu_p_local", "mu_q_local"):
            out[name] = ratio_json(getattr(self, name))
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict())


def local_stats(counts: CountVector | SubtreePolynomial | Sequence[int], n: int) -> LocalStatsReport:
    """Statistics over the subtrees that contain a fixed edge."""
    report = global_stats(counts, n)
    return LocalStatsReport(n, report.p, report.q, report.mu_p, report.mu_q)


def local_stats_complete(n: int) -> LocalStatsReport:
    if n < 3:
        raise DomainError("local statistics of K_n need n >= 3")
    return local_stats(complete_local_counts(n), n)


def local_stats_complete_formulas(n: int) -> LocalStatsReport:
    """Same quantities from the hyperbinomial-style sums, term by term.

    With S_j = sum_{k=0}^{n-2} (k+1)^j C(n-2, k) (k+2)^(k-1), whose k = 0
    term is the fraction 1/2:

        p'    = n^(n-3) / S_0
        q'    = (n-1) n^(n-3) / S_1
        mu_p' = S_1 / ((n-1) S_0)
        mu_q' = S_2 / ((n-1) S_1)
    """
    if n < 3:
        raise DomainError("local statistics of K_n need n >= 3")
    S = [Fraction(0)] * 3
    for k in range(n - 1):
        base = comb(n - 2, k) * Fraction(k + 2) ** (k - 1)
        for j in range(3):
            S[j] += (k + 1) ** j * base
    top = Fraction(n) ** (n - 3)
    return LocalStatsReport(
        n,
        top / S[0],
        (n - 1) * top / S[1],
        S[1] / ((n - 1) * S[0]),
        S[2] / ((n - 1) * S[1]),
    )
