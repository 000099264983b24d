"""
Mechanical checks of unimodality, density monotonicity and the identity
p = q * mu_p over single graphs, families and exhaustive small universes.

Every comparison is between exact rationals; nothing here has a tolerance.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .core import DomainError, Graph, SubtreePolynomial, theta_graph
from .enumeration import DEFAULT_BUDGET, BudgetExceeded, subtree_polynomial
from .stats import global_stats
from .universe import DEFAULT_CAP, canonical_key, universe

CHECKS = ("unimodal", "monotonicity", "pq_identity")


def describe(g: Graph) -> str:
    return f"{g.vertex_count}:" + ",".join(f"{u}-{v}" for u, v in g.sorted_edges())


@dataclass(frozen=True)
class ConjectureVerdict:
    conjecture: str
    instance: str
    holds: bool
    witness: dict | None = None
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.holds and self.witness is None:
            raise ValueError("a failed verdict must carry a witness")

    def as_dict(self) -> dict:
        return {
            "conjecture": self.conjecture,
            "instance": self.instance,
            "holds": self.holds,
            "witness": self.witness,
            **self.detail,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


def _sizes(poly: SubtreePolynomial | Sequence[int]) -> list[int]:
    """Coefficients for sizes 1, 2, ... with trailing zeros dropped."""
    if isinstance(poly, SubtreePolynomial):
        seq = list(poly.coefficients[1:])
    else:
        seq = [int(c) for c in poly]
    while seq and seq[-1] == 0:
        seq.pop()
    return seq


def check_unimodal(poly: SubtreePolynomial | Sequence[int], instance: str = "") -> ConjectureVerdict:
    """Weak unimodality of a_1, a_2, ... (a_0 is ignored).

    A plain sequence is read as a_1, a_2, ...  The reported mode is the
    smallest maximizing k.  A violation is witnessed by k indices i < j < l
    with a_i > a_j < a_l.
    """
    seq = _sizes(poly)
    if not seq:
        raise DomainError("no coefficients of positive degree")
    mode = 1 + seq.index(max(seq))
    detail = {"mode": mode, "coefficients": [str(c) for c in seq]}
    last_high = 0  # index into seq of the last value above the current run
    falling = False
    for i in range(1, len(seq)):
        if seq[i] < seq[i - 1]:
            falling = True
            last_high = i - 1
        elif seq[i] > seq[i - 1] and falling:
            witness = {"triple": [last_high + 1, i, i + 1],
                       "values": [str(seq[last_high]), str(seq[i - 1]), str(seq[i])]}
            return ConjectureVerdict("unimodal", instance, False, witness, detail)
    return ConjectureVerdict("unimodal", instance, True, None, detail)


def _density(g: Graph, measure: str, budget: int | None) -> Fraction:
    report = global_stats(subtree_polynomial(g, budget=budget), g.vertex_count)
    return report.mu_p if measure == "mu_p" else report.mu_q


def check_monotonicity(
    g: Graph, *, measure: str = "mu_p", budget: int | None = DEFAULT_BUDGET
) -> list[ConjectureVerdict]:
    """One verdict per non-edge e: is mu(G) < mu(G + e)?"""
    if measure not in ("mu_p", "mu_q"):
        raise DomainError("measure must be mu_p or mu_q")
    if not g.is_connected():
        raise DomainError("density monotonicity is only claimed for connected graphs")
    if g.vertex_count < 2:
        return []
    before = _density(g, measure, budget)
    out = []
    name = describe(g)
    for u, v in g.non_edges():
        after = _density(g.add_edge(u, v), measure, budget)
        holds = before < after
        detail = {"added": [u, v], "before": str(before), "after": str(after), "measure": measure}
        witness = None if holds else {"graph": name, "added": [u, v]}
        out.append(ConjectureVerdict("monotonicity", f"{name}+{u}-{v}", holds, witness, detail))
    return out


def check_pq_identity(g: Graph, *, budget: int | None = DEFAULT_BUDGET) -> ConjectureVerdict:
    if not g.is_connected():
        raise DomainError("the identity is checked on connected graphs")
    report = global_stats(subtree_polynomial(g, budget=budget), g.vertex_count)
    holds = report.p == report.q * report.mu_p
    detail = {"p": str(report.p), "q": str(report.q), "mu_p": str(report.mu_p)}
    witness = None if holds else {"graph": describe(g)}
    return ConjectureVerdict("pq_identity", describe(g), holds, witness, detail)


def _run_checks(g: Graph, checks: Sequence[str], measure: str, budget: int | None) -> list[ConjectureVerdict]:
    out: list[ConjectureVerdict] = []
    for check in checks:
        if check == "unimodal":
            out.append(check_unimodal(subtree_polynomial(g, budget=budget), describe(g)))
        elif check == "pq_identity":
            out.append(check_pq_identity(g, budget=budget))
        elif check == "monotonicity":
            out.extend(check_monotonicity(g, measure=measure, budget=budget))
    return out


@dataclass
class SearchSummary:
    max_n: int
    up_to_isomorphism: bool
    graphs: int = 0
    instances: dict[str, int] = field(default_factory=dict)
    violations: list[ConjectureVerdict] = field(default_factory=list)
    verdicts: list[ConjectureVerdict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "max_n": self.max_n,
            "up_to_isomorphism": self.up_to_isomorphism,
            "graphs": self.graphs,
            "instances": self.instances,
            "violations": len(self.violations),
        }


def search_small_graphs(
    max_n: int,
    checks: Iterable[str] = CHECKS,
    *,
    up_to_isomorphism: bool = True,
    cap: int = DEFAULT_CAP,
    measure: str = "mu_p",
    budget: int | None = DEFAULT_BUDGET,
    jobs: int = 1,
    keep_verdicts: bool = False,
) -> SearchSummary:
    """Run the selected checks on every connected graph with 2..max_n vertices."""
    checks = tuple(checks)
    unknown = set(checks) - set(CHECKS)
    if unknown:
        raise DomainError(f"unknown checks: {', '.join(sorted(unknown))}")
    gs = list(universe(max_n, up_to_isomorphism=up_to_isomorphism, cap=cap))
    summary = SearchSummary(max_n, up_to_isomorphism, graphs=len(gs))
    summary.instances = {c: 0 for c in checks}
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_checks, gs, [checks] * len(gs),
                                    [measure] * len(gs), [budget] * len(gs), chunksize=16))
    else:
        results = [_run_checks(g, checks, measure, budget) for g in gs]
    for verdicts in results:
        for v in verdicts:
            summary.instances[v.conjecture] += 1
            if not v.holds:
                summary.violations.append(v)
            if keep_verdicts:
                summary.verdicts.append(v)
    return summary


def violation_classes(summary: SearchSummary) -> set[tuple]:
    """Violations keyed by isomorphism class, for comparing labeled and deduped runs."""
    out = set()
    for v in summary.violations:
        n, _, edges = v.instance.partition(":")
        edge_part = edges.split("+")[0]
        g = Graph(int(n), [tuple(map(int, e.split("-"))) for e in edge_part.split(",") if e])
        out.add((v.conjecture, canonical_key(g)))
    return out


def theta_mode_trend(n_values: Iterable[int], *, budget: int | None = DEFAULT_BUDGET) -> list[dict]:
    """Mode of the theta(n, n) coefficients against sqrt(2) n.

    Stops at the first n whose census exceeds the budget and appends a row
    marked ``truncated``.
    """
    rows = []
    for n in n_values:
        try:
            poly = subtree_polynomial(theta_graph(n, n), budget=budget)
        except BudgetExceeded:
            rows.append({"n": n, "truncated": True})
            break
        verdict = check_unimodal(poly, f"theta({n},{n})")
        mode = verdict.detail["mode"]
        rows.append({
            "n": n,
            "mode": mode,
            "ratio": mode / (math.sqrt(2) * n),
            "unimodal": verdict.holds,
            "coefficients": verdict.detail["coefficients"],
        })
    return rows
