"""Pure-Python fallback for the numeric kernels.

Mirrors the compiled core operation-for-operation (same expression order,
same guards, same tie tolerances) so both lanes produce identical floats.
Kept dependency-light and readable; the compiled lane exists for speed.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import NoConvergence, NotPositiveDefinite

BACKEND_NAME = "python"

# Shared numeric policy; the compiled lane hard-codes the same constants.
TIE_TOL = 1e-12          # absolute tie window in the hop-bounded solver
PD_REL_EPS = 1e-14       # pivot threshold, relative to the largest diagonal
EIG_ABS_TOL = 1e-10      # bisection interval width at termination
EIG_MAX_ITER = 2000
_STURM_FLOOR = 1e-300    # pivot magnitude clamp in the Sturm recurrence

_INF = math.inf


def tri_trace_inverse(diag, offdiag) -> float:
    """Trace of the inverse of a symmetric tridiagonal positive definite
    matrix, via forward/backward pivot recurrences. O(m)."""
    d = [float(x) for x in diag]
    e = [float(x) for x in offdiag]
    m = len(d)
    if m == 0:
        return 0.0
    floor_ = PD_REL_EPS * max(d)
    q = [0.0] * m
    q[0] = d[0]
    if q[0] <= floor_:
        raise NotPositiveDefinite("leading pivot 1 failed")
    for i in range(1, m):
        q[i] = d[i] - (e[i - 1] * e[i - 1]) / q[i - 1]
        if q[i] <= floor_:
            raise NotPositiveDefinite(f"leading pivot {i + 1} failed")
    p = [0.0] * m
    p[m - 1] = d[m - 1]
    for i in range(m - 2, -1, -1):
        if p[i + 1] <= floor_:
            raise NotPositiveDefinite(f"trailing pivot {i + 2} failed")
        p[i] = d[i] - (e[i] * e[i]) / p[i + 1]
    total = 0.0
    for j in range(m):
        denom = d[j]
        if j > 0:
            denom -= (e[j - 1] * e[j - 1]) / q[j - 1]
        if j < m - 1:
            denom -= (e[j] * e[j]) / p[j + 1]
        if denom <= floor_:
            raise NotPositiveDefinite(f"diagonal denominator {j + 1} failed")
        total += 1.0 / denom
    return total


def sturm_count_below(diag, offdiag, x: float) -> int:
    """Number of eigenvalues strictly below x (negative-pivot count)."""
    d = [float(v) for v in diag]
    e = [float(v) for v in offdiag]
    count = 0
    q = 0.0
    for i in range(len(d)):
        if i == 0:
            q = d[0] - x
        else:
            if -_STURM_FLOOR < q < _STURM_FLOOR:
                q = -_STURM_FLOOR if q <= 0.0 else _STURM_FLOOR
            q = d[i] - x - (e[i - 1] * e[i - 1]) / q
        if q < 0.0:
            count += 1
    return count


def tri_min_eigenvalue(diag, offdiag) -> float:
    """Smallest eigenvalue of a symmetric tridiagonal matrix by Sturm
    bisection on a Gershgorin bracket, to EIG_ABS_TOL."""
    d = [float(v) for v in diag]
    e = [float(v) for v in offdiag]
    m = len(d)
    if m == 0:
        raise ValueError("empty matrix has no eigenvalues")
    if m == 1:
        return d[0]
    lo = _INF
    hi = _INF
    for i in range(m):
        radius = 0.0
        if i > 0:
            radius += abs(e[i - 1])
        if i < m - 1:
            radius += abs(e[i])
        lo = min(lo, d[i] - radius)
        hi = min(hi, d[i])
    if lo < 0.0:
        lo = 0.0
    iterations = 0
    while hi - lo > EIG_ABS_TOL:
        iterations += 1
        if iterations > EIG_MAX_ITER:
            raise NoConvergence(
                f"bisection stalled after {EIG_MAX_ITER} steps on [{lo}, {hi}]"
            )
        mid = 0.5 * (lo + hi)
        if sturm_count_below(d, e, mid) >= 1:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _block_value(d, e, a: int, b: int, eig_mode: bool) -> float:
    """Value of the inclusive sub-block [a..b]: half trace-inverse, or the
    smallest eigenvalue. Non-positive-definite blocks map to +inf in trace
    mode (infinite variance), matching the compiled lane."""
    if eig_mode:
        return tri_min_eigenvalue(d[a : b + 1], e[a:b])
    try:
        return 0.5 * tri_trace_inverse(d[a : b + 1], e[a:b])
    except NotPositiveDefinite:
        return _INF


def contiguous_block_table(diag, offdiag, eig_mode: bool) -> np.ndarray:
    """Table V with V[a, b] = block value of the contiguous range [a..b]
    (0-based, inclusive) of a tridiagonal matrix. Lower triangle is NaN."""
    d = [float(v) for v in diag]
    e = [float(v) for v in offdiag]
    m = len(d)
    table = np.full((m, m), np.nan)
    for a in range(m):
        for b in range(a, m):
            table[a, b] = _block_value(d, e, a, b, eig_mode)
    return table


def ring_gap_table(diag2, offdiag2, n: int, eig_mode: bool) -> np.ndarray:
    """Table G with G[u-1, v-1] = block value of the clockwise follower gap
    from leader u to leader v on a ring of n nodes. The diagonal holds the
    whole-ring-minus-one-leader value. diag2/offdiag2 are the ring unrolled
    to a 2n-1 node path. Interior-free gaps get 0 (trace) or +inf (eigen)."""
    d2 = [float(v) for v in diag2]
    e2 = [float(v) for v in offdiag2]
    if len(d2) != 2 * n - 1:
        raise ValueError("unrolled diagonal must have length 2n-1")
    empty = _INF if eig_mode else 0.0
    table = np.empty((n, n))
    for u in range(1, n + 1):
        for v in range(1, n + 1):
            length = n - 1 if u == v else (v - u - 1) % n
            if length == 0:
                table[u - 1, v - 1] = empty
            else:
                table[u - 1, v - 1] = _block_value(d2, e2, u, u + length - 1, eig_mode)
    return table


def bf_tables(num_nodes: int, indptr, srcs, weights, source: int, hops: int,
              widest: bool):
    """Hop-indexed dynamic program over a digraph in incoming-CSR form.

    Returns (dist, pred) where dist[m][v] is the optimal value of an
    exactly-m-edge walk from source to v (sum in min mode, bottleneck in
    widest mode) and pred[m][v] the predecessor realizing it. Unreached
    entries are +inf (min) / -inf (widest); predecessors default to -1.
    Within the absolute tie window TIE_TOL the smallest predecessor wins.
    """
    indptr = list(indptr)
    srcs = list(srcs)
    w = [float(x) for x in weights]
    unreached = -_INF if widest else _INF
    dist = np.full((hops + 1, num_nodes), unreached)
    pred = np.full((hops + 1, num_nodes), -1, dtype=np.int32)
    dist[0, source] = _INF if widest else 0.0
    prev_row = dist[0].tolist()
    for m in range(1, hops + 1):
        row = [unreached] * num_nodes
        prow = [-1] * num_nodes
        for v in range(num_nodes):
            best = unreached
            best_u = -1
            for idx in range(indptr[v], indptr[v + 1]):
                u = srcs[idx]
                prev = prev_row[u]
                if prev == unreached:
                    continue
                if widest:
                    cand = prev if prev < w[idx] else w[idx]
                    if cand > best + TIE_TOL:
                        best = cand
                        best_u = u
                else:
                    cand = prev + w[idx]
                    if cand < best - TIE_TOL:
                        best = cand
                        best_u = u
            row[v] = best
            prow[v] = best_u
        dist[m] = row
        pred[m] = prow
        prev_row = row
    return dist, pred
