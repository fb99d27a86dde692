"""Optimal k-leader selection in weighted path and ring consensus networks.

Two objectives are supported: network coherence (total steady-state variance
of the followers, minimized) and convergence rate (smallest grounded-
Laplacian eigenvalue, maximized). The optimal selectors reduce selection to
hop-bounded minimum-weight / widest path problems on a derived digraph and
run in polynomial time; greedy and brute-force baselines are included.
"""

from ._kernels import BACKEND
from .errors import (
    LeaderSelError,
    MalformedInput,
    NoConvergence,
    NotPositiveDefinite,
    TooLarge,
    Unreachable,
)
from .graphs import (
    GraphSpec,
    LeaderSet,
    Metric,
    Segment,
    Topology,
    follower_segments,
    format_graph,
    parse_graph,
    skewed_policy,
    uniform_policy,
)
from .hoppaths import HopPathResult, SelectionDigraph, min_weight_path, widest_path
from .metrics import Objective, coherence, convergence_rate, evaluate
from .selectors import (
    Method,
    SelectionResult,
    brute_force,
    greedy,
    greedy_bound_check,
    greedy_curve,
    optimal_curve,
    optimal_path,
    optimal_ring,
    optimal_select,
)
from .tridiag import SegmentMatrix, min_eigenvalue, segment_matrix, trace_inverse

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "GraphSpec",
    "HopPathResult",
    "LeaderSet",
    "LeaderSelError",
    "MalformedInput",
    "Method",
    "Metric",
    "NoConvergence",
    "NotPositiveDefinite",
    "Objective",
    "Segment",
    "SegmentMatrix",
    "SelectionDigraph",
    "SelectionResult",
    "TooLarge",
    "Topology",
    "Unreachable",
    "brute_force",
    "coherence",
    "convergence_rate",
    "evaluate",
    "follower_segments",
    "format_graph",
    "greedy",
    "greedy_bound_check",
    "greedy_curve",
    "min_eigenvalue",
    "min_weight_path",
    "optimal_curve",
    "optimal_path",
    "optimal_ring",
    "optimal_select",
    "parse_graph",
    "segment_matrix",
    "skewed_policy",
    "trace_inverse",
    "uniform_policy",
    "widest_path",
]
