"""Exact subtree statistics of graphs: census, closed forms, probabilities and densities."""

from .closed_form import (
    CountVector,
    bipartite_counts,
    complete_counts,
    complete_local_counts,
    cycle_counts,
)
from .core import (
    ArborError,
    DomainError,
    Graph,
    ParseError,
    SubtreePolynomial,
    build_family,
    format_sig,
    parse_edge_list,
    poly_eval_derivatives,
    serialize_edge_list,
)
from .enumeration import (
    BudgetExceeded,
    enumerate_subtrees,
    local_subtree_polynomial,
    subtree_polynomial,
)
from .stats import (
    LocalStatsReport,
    StatsReport,
    density_from_polynomial,
    global_stats,
    local_stats_complete,
)

__version__ = "0.1.0"
