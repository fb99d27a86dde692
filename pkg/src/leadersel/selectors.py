"""Leader-set selection: the optimal digraph-reduction algorithms for path
and ring topologies, the greedy baseline, and the brute-force oracle.

The optimal selectors reduce selection to a hop-bounded path problem:
minimum-weight path for coherence, widest path for convergence. Digraph
edges carry follower-block values (half trace-inverse, or smallest
eigenvalue), precomputed for every contiguous block with the O(m) kernels.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .errors import TooLarge
from .graphs import GraphSpec, LeaderSet, Metric, Topology
from .hoppaths import (
    SelectionDigraph,
    best_hop_count,
    min_weight_path,
    reconstruct_nodes,
    solve_hop_tables,
    widest_path,
)
from .metrics import Objective, evaluate
from .tridiag import edge_coupling, node_degree

BRUTE_FORCE_GUARD = 10**7


class Method(Enum):
    OPTIMAL_DP = "optimal"
    GREEDY = "greedy"
    BRUTE_FORCE = "brute"


@dataclass(frozen=True)
class SelectionResult:
    leaders: LeaderSet
    objective: Objective
    method: Method
    elapsed: float


def _clamp_k(spec: GraphSpec, k: int) -> int:
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    return min(k, spec.n)


def _is_widest(spec: GraphSpec) -> bool:
    return spec.metric is Metric.CONVERGENCE


def _empty_block_value(spec: GraphSpec) -> float:
    return math.inf if _is_widest(spec) else 0.0


# ---------------------------------------------------------------------------
# path topology


def _path_arrays(spec: GraphSpec) -> tuple[np.ndarray, np.ndarray]:
    n = spec.n
    diag = np.array([node_degree(spec, v) for v in range(1, n + 1)])
    off = np.array([-edge_coupling(spec, i) for i in range(1, n)])
    return diag, off


def path_digraph(spec: GraphSpec) -> SelectionDigraph:
    """The selection digraph for a path instance.

    Node ids: source 0, graph nodes 1..n, target n+1. Edge (u, v) carries the
    value of the follower block strictly between u and v; source/target edges
    carry the prefix/suffix block values. Blocks with no interior get 0
    (coherence) or +inf (convergence).
    """
    n = spec.n
    diag, off = _path_arrays(spec)
    table = _kernels.contiguous_block_table(diag, off, _is_widest(spec))
    empty = _empty_block_value(spec)

    ids = np.arange(1, n + 1, dtype=np.int32)
    # source -> v: block of nodes 1..v-1
    w_sv = np.empty(n)
    w_sv[0] = empty
    if n > 1:
        w_sv[1:] = table[0, 0 : n - 1]
    # u -> v (u < v): block of nodes u+1..v-1
    uu, vv = np.triu_indices(n, 1)
    uu += 1
    vv += 1
    w_uv = np.where(vv == uu + 1, empty, table[uu % n, (vv - 2) % n])
    # v -> target: block of nodes v+1..n
    w_vt = np.empty(n)
    w_vt[n - 1] = empty
    if n > 1:
        w_vt[: n - 1] = table[1:n, n - 1]

    tails = np.concatenate([np.zeros(n, dtype=np.int32), uu.astype(np.int32), ids])
    heads = np.concatenate([ids, vv.astype(np.int32), np.full(n, n + 1, dtype=np.int32)])
    weights = np.concatenate([w_sv, w_uv, w_vt])
    return SelectionDigraph.from_arrays(n + 2, 0, n + 1, tails, heads, weights)


def optimal_path(spec: GraphSpec, k: int) -> SelectionResult:
    """Globally optimal leader set of size at most k on a path. O(n^3)."""
    return optimal_path_curve(spec, (k,))[k]


def optimal_path_curve(spec: GraphSpec, k_values: Sequence[int]) -> dict[int, SelectionResult]:
    """Optimal path selection for several k at once, sharing the digraph and
    the hop-indexed DP tables (one pass at the largest budget)."""
    if spec.topology is not Topology.PATH:
        raise ValueError("instance is not a path")
    started = time.perf_counter()
    ks = sorted({_clamp_k(spec, k) for k in k_values})
    widest = _is_widest(spec)
    g = path_digraph(spec)
    max_hops = max(ks) + 1
    dist, pred = solve_hop_tables(g, max_hops, widest)
    column = dist[:, g.target]
    out: dict[int, SelectionResult] = {}
    for k in ks:
        m = best_hop_count(column, k + 1, widest)
        nodes = reconstruct_nodes(pred, g.target, m)
        leaders = LeaderSet(nodes[1:-1])
        result = SelectionResult(
            leaders,
            Objective(spec.metric, float(column[m])),
            Method.OPTIMAL_DP,
            time.perf_counter() - started,
        )
        out[k] = result
    for k in k_values:
        out.setdefault(k, out[_clamp_k(spec, k)])
    return out


# ---------------------------------------------------------------------------
# ring topology


def ring_gap_values(spec: GraphSpec) -> np.ndarray:
    """n x n table of clockwise follower-gap values: entry (u-1, v-1) is the
    block value of the gap from leader u to leader v; the diagonal holds the
    whole-ring-minus-one value used by the direct source->target edge."""
    n = spec.n
    diag2 = np.array([node_degree(spec, p % n + 1) for p in range(2 * n - 1)])
    off2 = np.array([-edge_coupling(spec, p % n + 1) for p in range(2 * n - 2)])
    return _kernels.ring_gap_table(diag2, off2, n, _is_widest(spec))


def ring_digraph(spec: GraphSpec, table: np.ndarray, candidate: int) -> SelectionDigraph:
    """The selection digraph for one candidate leader on a ring.

    Node ids: source 0, ring nodes except the candidate, target n+1 (the
    candidate id is present but isolated). Every ordered pair of remaining
    nodes gets the clockwise gap value; source/target edges close the gaps
    back to the candidate, and a direct source->target edge covers the
    single-leader case.
    """
    n = spec.n
    others = np.array([v for v in range(1, n + 1) if v != candidate], dtype=np.int32)
    m = others.shape[0]

    # Edges grouped by head with tails ascending (the solver's CSR order):
    # head v gets tails [source, others except v], head target gets
    # [source, others]. Built with an off-diagonal mask, no per-edge loop.
    off_diag = ~np.eye(m, dtype=bool)
    tails_in = np.empty((m, m), dtype=np.int32)
    tails_in[:, 0] = 0
    tails_in[:, 1:] = np.broadcast_to(others, (m, m))[off_diag].reshape(m, m - 1)
    gap_in = table[np.ix_(others - 1, others - 1)]
    w_in = np.empty((m, m))
    w_in[:, 0] = table[candidate - 1, others - 1]
    w_in[:, 1:] = gap_in.T[off_diag].reshape(m, m - 1)

    heads = np.concatenate([
        np.repeat(others, m),
        np.full(m + 1, n + 1, dtype=np.int32),
    ])
    tails = np.concatenate([
        tails_in.ravel(),
        np.array([0], dtype=np.int32),
        others,
    ])
    weights = np.concatenate([
        w_in.ravel(),
        np.array([table[candidate - 1, candidate - 1]]),
        table[others - 1, candidate - 1],
    ])
    return SelectionDigraph.from_arrays(n + 2, 0, n + 1, tails, heads, weights)


def optimal_ring(spec: GraphSpec, k: int) -> SelectionResult:
    """Globally optimal leader set of size at most k on a ring. O(k n^3)."""
    return optimal_ring_curve(spec, (k,))[k]


def optimal_ring_curve(spec: GraphSpec, k_values: Sequence[int]) -> dict[int, SelectionResult]:
    """Optimal ring selection for several k at once.

    One hop-indexed DP pass per candidate leader at the largest budget
    yields per-hop target values for all k; winning candidates are re-solved
    once each to reconstruct their paths.
    """
    if spec.topology is not Topology.RING:
        raise ValueError("instance is not a ring")
    started = time.perf_counter()
    ks = sorted({_clamp_k(spec, k) for k in k_values})
    widest = _is_widest(spec)
    n = spec.n
    table = ring_gap_values(spec)
    max_hops = max(ks)

    columns = np.empty((n, max_hops + 1))
    for i in range(1, n + 1):
        g = ring_digraph(spec, table, i)
        dist, _ = solve_hop_tables(g, max_hops, widest)
        columns[i - 1] = dist[:, g.target]

    # Winner per k: candidates scanned in id order, strict improvement only,
    # mirroring the per-candidate loop of the single-k algorithm.
    winners: dict[int, tuple[int, int, float]] = {}
    for k in ks:
        best: Optional[tuple[int, int, float]] = None
        for i in range(1, n + 1):
            m = best_hop_count(columns[i - 1], k, widest)
            if m is None:
                continue
            value = float(columns[i - 1][m])
            if best is None or (value > best[2] if widest else value < best[2]):
                best = (i, m, value)
        if best is None:
            raise RuntimeError("ring digraph must always reach its target")
        winners[k] = best

    pred_cache: dict[int, np.ndarray] = {}
    out: dict[int, SelectionResult] = {}
    for k in ks:
        i, m, value = winners[k]
        if i not in pred_cache:
            g = ring_digraph(spec, table, i)
            _, pred = solve_hop_tables(g, max_hops, widest)
            pred_cache[i] = pred
        nodes = reconstruct_nodes(pred_cache[i], n + 1, m)
        leaders = LeaderSet(tuple(sorted(set(nodes[1:-1]) | {i})))
        out[k] = SelectionResult(
            leaders,
            Objective(spec.metric, value),
            Method.OPTIMAL_DP,
            time.perf_counter() - started,
        )
    for k in k_values:
        out.setdefault(k, out[_clamp_k(spec, k)])
    return out


def optimal_select(spec: GraphSpec, k: int) -> SelectionResult:
    """Topology dispatch for the optimal selectors."""
    if spec.topology is Topology.PATH:
        return optimal_path(spec, k)
    return optimal_ring(spec, k)


def optimal_curve(spec: GraphSpec, k_values: Sequence[int]) -> dict[int, SelectionResult]:
    if spec.topology is Topology.PATH:
        return optimal_path_curve(spec, k_values)
    return optimal_ring_curve(spec, k_values)


# ---------------------------------------------------------------------------
# baselines


def _better(spec: GraphSpec, value: float, than: float) -> bool:
    return value > than if _is_widest(spec) else value < than


def greedy(spec: GraphSpec, k: int) -> SelectionResult:
    """Greedy baseline: repeatedly add the node that most improves the
    objective, smallest id on ties; stop early when no strict improvement."""
    return greedy_curve(spec, (k,))[k]


def greedy_curve(spec: GraphSpec, k_values: Sequence[int]) -> dict[int, SelectionResult]:
    """Greedy selection for several k at once (a greedy run for the largest
    k passes through the solutions for all smaller k)."""
    started = time.perf_counter()
    ks = sorted({_clamp_k(spec, k) for k in k_values})
    chosen: list[int] = []
    current: Optional[float] = None
    snapshots: dict[int, SelectionResult] = {}

    def snap(k: int) -> None:
        snapshots[k] = SelectionResult(
            LeaderSet(tuple(sorted(chosen))),
            Objective(spec.metric, current if current is not None else math.nan),
            Method.GREEDY,
            time.perf_counter() - started,
        )

    for step in range(1, max(ks) + 1):
        best_v: Optional[int] = None
        best_val = math.nan
        for v in range(1, spec.n + 1):
            if v in chosen:
                continue
            val = evaluate(spec, LeaderSet(tuple(sorted(chosen + [v])))).value
            if best_v is None or _better(spec, val, best_val):
                best_v, best_val = v, val
        if best_v is None or (current is not None and not _better(spec, best_val, current)):
            break
        chosen.append(best_v)
        current = best_val
        if step in ks:
            snap(step)

    for k in ks:
        if k not in snapshots:
            snap(k)
    out = dict(snapshots)
    for k in k_values:
        out.setdefault(k, out[_clamp_k(spec, k)])
    return out


def brute_force(spec: GraphSpec, k: int) -> SelectionResult:
    """Exhaustive search over every leader set of size at most k; exact
    optimum, lexicographically smallest set on ties. Guarded by
    BRUTE_FORCE_GUARD candidate sets."""
    started = time.perf_counter()
    k = _clamp_k(spec, k)
    total = sum(math.comb(spec.n, size) for size in range(1, k + 1))
    if total > BRUTE_FORCE_GUARD:
        raise TooLarge(f"{total} candidate sets exceed the guard {BRUTE_FORCE_GUARD}")
    best: Optional[tuple[float, tuple[int, ...]]] = None
    for size in range(1, k + 1):
        for combo in itertools.combinations(range(1, spec.n + 1), size):
            value = evaluate(spec, LeaderSet(combo)).value
            if best is None or _better(spec, value, best[0]):
                best = (value, combo)
    assert best is not None
    return SelectionResult(
        LeaderSet(best[1]),
        Objective(spec.metric, best[0]),
        Method.BRUTE_FORCE,
        time.perf_counter() - started,
    )


def greedy_bound_check(spec: GraphSpec, k: int, greedy_value: float,
                       optimal_value: float) -> bool:
    """Supermodularity bound for greedy coherence selection:
    R_greedy <= (1 - ((k-1)/k)^k) * R_opt + R_max / e, with R_max the worst
    single-leader variance. Must hold for a correct greedy."""
    if spec.metric is not Metric.COHERENCE:
        raise ValueError("the greedy bound applies to the coherence metric")
    if k < 1:
        raise ValueError("k must be at least 1")
    r_max = max(
        evaluate(spec, LeaderSet((v,))).value for v in range(1, spec.n + 1)
    )
    factor = 1.0 - ((k - 1) / k) ** k
    return greedy_value <= factor * optimal_value + r_max / math.e
