"""
Certified limit constants, bound checks for the complete-graph census, and
convergence tables.

Constants are enclosed in rational intervals built from the Maclaurin series
of exp with an explicit Lagrange remainder, so every comparison against them
is exact: a strict inequality is checked against the unfavourable end of the
enclosure.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor, factorial
from typing import Iterable, Sequence

from .closed_form import complete_counts
from .core import DomainError, format_sig
from .stats import StatsReport, global_stats

PRECISION_BITS = 160
SERIES_TERMS = 40

Rational = Fraction | int


def _down(x: Fraction) -> Fraction:
    scale = 1 << PRECISION_BITS
    return Fraction(floor(x * scale), scale)


def _up(x: Fraction) -> Fraction:
    scale = 1 << PRECISION_BITS
    return Fraction(ceil(x * scale), scale)


@dataclass(frozen=True)
class Interval:
    """Closed rational interval; arithmetic rounds outward to a dyadic grid."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty interval")

    @classmethod
    def point(cls, x: Rational) -> Interval:
        return cls(Fraction(x), Fraction(x))

    @staticmethod
    def _wrap(x) -> Interval:
        return x if isinstance(x, Interval) else Interval.point(x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: Rational) -> bool:
        return self.lo <= x <= self.hi

    def __add__(self, other) -> Interval:
        o = self._wrap(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self) -> Interval:
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other) -> Interval:
        return self + (-self._wrap(other))

    def __rsub__(self, other) -> Interval:
        return self._wrap(other) - self

    def __mul__(self, other) -> Interval:
        o = self._wrap(other)
        products = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi]
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def reciprocal(self) -> Interval:
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return Interval(_down(1 / self.hi), _up(1 / self.lo))

    def __truediv__(self, other) -> Interval:
        return self * self._wrap(other).reciprocal()

    def __rtruediv__(self, other) -> Interval:
        return self._wrap(other) * self.reciprocal()

    def rounded(self) -> Interval:
        return Interval(_down(self.lo), _up(self.hi))


def _exp_series(x: Fraction, terms: int, round_up: bool) -> Fraction:
    """sum_{i<=terms} x^i/i! for x >= 0, each term rounded in one direction."""
    rnd = _up if round_up else _down
    total = Fraction(1)
    term = Fraction(1)
    for i in range(1, terms + 1):
        term = rnd(term * x / i)
        total += term
    return total


@lru_cache(maxsize=None)
def euler() -> Interval:
    """e, with the tail after 1/N! bounded by 1/(N! N)."""
    lower = _exp_series(Fraction(1), SERIES_TERMS, round_up=False)
    upper = _exp_series(Fraction(1), SERIES_TERMS, round_up=True)
    upper += _up(Fraction(1, factorial(SERIES_TERMS) * SERIES_TERMS))
    return Interval(lower, upper)


def exp_interval(x: Interval) -> Interval:
    """Enclosure of exp over an interval inside [-1, 1].

    For 0 <= y <= 1 the Lagrange remainder after the x^N term is at most
    e^y y^(N+1)/(N+1)! < 3 y^(N+1)/(N+1)!.
    """
    if x.lo < -1 or x.hi > 1:
        raise DomainError("exp_interval expects arguments in [-1, 1]")
    if x.lo < 0 < x.hi:
        return exp_interval(Interval(x.lo, Fraction(0))) * exp_interval(Interval(Fraction(0), x.hi))
    if x.lo < 0:
        return exp_interval(-x).reciprocal()
    n = SERIES_TERMS
    lower = _exp_series(x.lo, n, round_up=False)
    upper = _exp_series(x.hi, n, round_up=True)
    upper += _up(3 * x.hi ** (n + 1) / factorial(n + 1))
    return Interval(lower, upper)


def inverse_e() -> Interval:
    return euler().reciprocal()


def exp_partial_sum(x: Interval, last: int) -> Interval:
    """Enclosure of sum_{i=0}^{last} x^i/i! for a nonnegative interval x."""
    if x.lo < 0:
        raise DomainError("exp_partial_sum expects a nonnegative interval")
    if last < 0:
        return Interval.point(0)
    return Interval(_exp_series(x.lo, last, False), _exp_series(x.hi, last, True))


@dataclass(frozen=True)
class CertifiedConstant:
    name: str
    expression: str
    lower: Fraction
    upper: Fraction

    @property
    def interval(self) -> Interval:
        return Interval(self.lower, self.upper)

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def decimal(self, digits: int = 6) -> str:
        """Significant-digit rendering; both ends of the enclosure must agree."""
        lo, hi = format_sig(self.lower, digits), format_sig(self.upper, digits)
        if lo != hi:
            raise ArithmeticError(f"{self.name}: enclosure too wide for {digits} digits")
        return lo

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "expression": self.expression,
            "lower": f"{self.lower.numerator}/{self.lower.denominator}",
            "upper": f"{self.upper.numerator}/{self.upper.denominator}",
            "dec": self.decimal(),
            "dec15": self.decimal(15),
        }


@lru_cache(maxsize=None)
def _spanning_interval() -> Interval:
    return exp_interval(-inverse_e())


@lru_cache(maxsize=None)
def limit_constants() -> tuple[CertifiedConstant, ...]:
    inv_e = inverse_e()
    spanning = _spanning_interval()
    values = [
        ("spanning_limit", "exp(-1/e)", spanning),
        ("near_spanning_limit", "exp(-1-1/e)", spanning * inv_e),
        ("bipartite_limit", "exp(-2/e)", exp_interval(-2 * inv_e)),
        ("euler_inv_exp", "exp(1/e)", exp_interval(inv_e)),
    ]
    return tuple(CertifiedConstant(name, expr, iv.lo, iv.hi) for name, expr, iv in values)


def constant(name: str) -> CertifiedConstant:
    for c in limit_constants():
        if c.name == name:
            return c
    raise DomainError(f"unknown constant {name!r}")


# ---------------------------------------------------------------------------
# Bound checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundCheck:
    """``lhs`` compared with an enclosed right-hand side.

    For ``relation == ">"`` the verdict is ``lhs > rhs_upper``; for ``">="``
    it is ``lhs >= rhs_upper``.  A true verdict is therefore a proof for that n.
    """

    name: str
    n: int
    relation: str
    lhs: Fraction
    rhs_lower: Fraction
    rhs_upper: Fraction
    verdict: bool
    gap: Interval | None = None

    def as_dict(self) -> dict:
        out = {
            "bound": self.name,
            "n": self.n,
            "relation": self.relation,
            "lhs": format_sig(self.lhs),
            "rhs": format_sig((self.rhs_lower + self.rhs_upper) / 2),
            "verdict": self.verdict,
        }
        if self.gap is not None:
            out["gap"] = format_sig(self.gap.mid)
        return out


def _complete_totals(n: int) -> tuple[int, int, int]:
    counts = complete_counts(n)
    A = sum(counts)
    B = sum(k * c for k, c in enumerate(counts, start=1))
    return A, B, counts.top


def verify_B_lower_bound(n: int) -> BoundCheck:
    """B > (n-1) n^(n-2) ((n-3)/(n-1)) e^(1/e), i.e. B > (n-3) n^(n-2) e^(1/e)."""
    if n < 4:
        raise DomainError("the B lower bound is checked for n >= 4")
    _, B, _ = _complete_totals(n)
    rhs = constant("euler_inv_exp").interval * ((n - 3) * n ** (n - 2))
    return BoundCheck("B_lower", n, ">", Fraction(B), rhs.lo, rhs.hi, B > rhs.hi)


def verify_A_sandwich(n: int, last: int | None = None) -> BoundCheck:
    """A / a_{n-1} >= sum_{i=0}^{last} 1/(i! e^i), plus the gap A/a_{n-1} - e^(1/e).

    Chaining a_{i-1} >= a_i / ((n-i) e) down from the spanning count gives
    a_{n-1-j} >= a_{n-1} / (j! e^j) for j = 0..n-2, so ``last`` defaults to
    n-2.  Passing ``last=n-1`` checks the stronger form with one extra term,
    which fails at n = 2.
    """
    if n < 2:
        raise DomainError("the A sandwich needs n >= 2")
    A, _, top = _complete_totals(n)
    lhs = Fraction(A, top)
    rhs = exp_partial_sum(inverse_e(), n - 2 if last is None else last)
    gap = lhs - constant("euler_inv_exp").interval
    return BoundCheck("A_sandwich", n, ">=", lhs, rhs.lo, rhs.hi, lhs >= rhs.hi, gap)


# ---------------------------------------------------------------------------
# Convergence tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TableRow:
    n: int
    report: StatsReport
    gap_p: Interval
    gap_q: Interval

    @property
    def p(self) -> Fraction:
        return self.report.p

    @property
    def q(self) -> Fraction:
        return self.report.q

    @property
    def mu_p(self) -> Fraction:
        return self.report.mu_p

    @property
    def mu_q(self) -> Fraction:
        return self.report.mu_q

    def cells(self, digits: int = 6) -> list[str]:
        return [
            str(self.n),
            *(format_sig(x, digits) for x in (self.p, self.q, self.mu_p, self.mu_q)),
            format_sig(self.gap_p.mid, digits),
            format_sig(self.gap_q.mid, digits),
        ]


CSV_HEADER = "n,p,q,mu_p,mu_q,gap_p,gap_q"


def complete_stats(n: int) -> StatsReport:
    return global_stats(complete_counts(n), n)


def _row(n: int) -> TableRow:
    if n < 2:
        raise DomainError("table rows need n >= 2")
    report = complete_stats(n)
    limit = _spanning_interval()
    return TableRow(n, report, limit - report.p, limit - report.q)


def convergence_table(n_values: Iterable[int], jobs: int = 1) -> list[TableRow]:
    """One exact row per n, in input order."""
    ns = list(n_values)
    for n in ns:
        if n < 2:
            raise DomainError("table rows need n >= 2")
    if jobs <= 1 or len(ns) < 2:
        return [_row(n) for n in ns]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_row, ns))


def table_csv(rows: Sequence[TableRow], digits: int = 6) -> str:
    lines = [CSV_HEADER]
    lines.extend(",".join(row.cells(digits)) for row in rows)
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class NearSpanning:
    n: int
    ratio: Fraction
    prob_uniform: Fraction
    prob_weighted: Fraction

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "ratio": format_sig(self.ratio),
            "prob_uniform": format_sig(self.prob_uniform),
            "prob_weighted": format_sig(self.prob_weighted),
        }


def near_spanning_stats(n: int) -> NearSpanning:
    """Statistics of subtrees one edge short of spanning in K_n."""
    if n < 3:
        raise DomainError("near-spanning statistics need n >= 3")
    counts = complete_counts(n)
    A = sum(counts)
    B = sum(k * c for k, c in enumerate(counts, start=1))
    near = counts[n - 2]
    return NearSpanning(
        n,
        Fraction(counts[n - 1], near),
        Fraction(near, A),
        Fraction((n - 2) * near, B),
    )
