"""Objective evaluation for a leader set: total steady-state variance
(coherence) and worst-block smallest eigenvalue (convergence rate)."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graphs import GraphSpec, LeaderSet, Metric, follower_segments
from .tridiag import min_eigenvalue, segment_matrix, trace_inverse


@dataclass(frozen=True)
class Objective:
    metric: Metric
    value: float


def coherence(spec: GraphSpec, leaders: LeaderSet) -> Objective:
    """Half the trace of the inverse grounded Laplacian, summed blockwise.

    Smaller is better; 0 when every follower block is empty.
    """
    if spec.metric is not Metric.COHERENCE:
        raise ValueError("instance does not carry coherence weights")
    total = 0.0
    for seg in follower_segments(spec, leaders):
        total += trace_inverse(segment_matrix(spec, seg))
    return Objective(Metric.COHERENCE, 0.5 * total)


def convergence_rate(spec: GraphSpec, leaders: LeaderSet) -> Objective:
    """Minimum over follower blocks of the smallest eigenvalue.

    Larger is better; +inf when every follower block is empty (no follower
    constrains the rate).
    """
    if spec.metric is not Metric.CONVERGENCE:
        raise ValueError("instance does not carry convergence weights")
    worst = math.inf
    for seg in follower_segments(spec, leaders):
        worst = min(worst, min_eigenvalue(segment_matrix(spec, seg)))
    return Objective(Metric.CONVERGENCE, worst)


def evaluate(spec: GraphSpec, leaders: LeaderSet) -> Objective:
    """Dispatch on the instance metric."""
    if spec.metric is Metric.COHERENCE:
        return coherence(spec, leaders)
    return convergence_rate(spec, leaders)
