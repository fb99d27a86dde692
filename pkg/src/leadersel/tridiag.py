"""O(m) kernels on symmetric tridiagonal follower blocks.

A follower block of the grounded Laplacian is symmetric tridiagonal: its
diagonal carries the full-graph weighted degrees of the interior nodes
(couplings to bounding leaders included) and its off-diagonal the negated
couplings between consecutive interior nodes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graphs import GraphSpec, Metric, Segment, Topology


def edge_coupling(spec: GraphSpec, i: int) -> float:
    """Magnitude of the Laplacian coupling on 1-based edge i.

    Coherence stores noise covariances, so the coupling is the reciprocal
    weight; convergence stores the coupling directly.
    """
    w = spec.edge_weights[i - 1]
    return 1.0 / w if spec.metric is Metric.COHERENCE else w


def node_degree(spec: GraphSpec, v: int) -> float:
    """Weighted degree of node v (the Laplacian diagonal entry)."""
    if spec.topology is Topology.RING:
        left = spec.n if v == 1 else v - 1
        return edge_coupling(spec, left) + edge_coupling(spec, v)
    total = 0.0
    if v > 1:
        total += edge_coupling(spec, v - 1)
    if v < spec.n:
        total += edge_coupling(spec, v)
    return total


@dataclass(frozen=True, eq=False)
class SegmentMatrix:
    """Symmetric tridiagonal block stored as diagonal + off-diagonal arrays.

    ``size == 0`` encodes the empty block.
    """

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        d = np.ascontiguousarray(self.diag, dtype=np.float64)
        e = np.ascontiguousarray(self.offdiag, dtype=np.float64)
        if e.shape[0] != max(d.shape[0] - 1, 0):
            raise ValueError(
                f"off-diagonal length {e.shape[0]} does not match diagonal "
                f"length {d.shape[0]}"
            )
        if d.size and not np.isfinite(d).all() or e.size and not np.isfinite(e).all():
            raise ValueError("matrix entries must be finite")
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "offdiag", e)

    @property
    def size(self) -> int:
        return self.diag.shape[0]

    def dense(self) -> np.ndarray:
        """Materialize the full matrix (test/debug helper)."""
        m = self.size
        out = np.zeros((m, m))
        idx = np.arange(m)
        out[idx, idx] = self.diag
        out[idx[:-1], idx[:-1] + 1] = self.offdiag
        out[idx[:-1] + 1, idx[:-1]] = self.offdiag
        return out


def _interior_edge(spec: GraphSpec, a: int, b: int) -> int:
    """Edge index joining consecutive interior nodes a -> b."""
    if spec.topology is Topology.PATH:
        if b != a + 1:
            raise ValueError(f"nodes {a}, {b} are not adjacent on the path")
        return a
    if b != a % spec.n + 1:
        raise ValueError(f"nodes {a}, {b} are not clockwise-adjacent on the ring")
    return a


def segment_matrix(spec: GraphSpec, seg: Segment) -> SegmentMatrix:
    """Grounded-Laplacian block for one follower segment."""
    nodes = seg.interior_nodes
    m = len(nodes)
    diag = np.empty(m)
    offdiag = np.empty(max(m - 1, 0))
    for j, v in enumerate(nodes):
        diag[j] = node_degree(spec, v)
    for j in range(m - 1):
        offdiag[j] = -edge_coupling(spec, _interior_edge(spec, nodes[j], nodes[j + 1]))
    return SegmentMatrix(diag, offdiag)


def trace_inverse(matrix: SegmentMatrix) -> float:
    """tr(M^-1) for a positive definite block; 0 for the empty block.

    Raises NotPositiveDefinite when a pivot falls below the relative
    threshold, signalling an invalid block.
    """
    if matrix.size == 0:
        return 0.0
    return _kernels.tri_trace_inverse(matrix.diag, matrix.offdiag)


def min_eigenvalue(matrix: SegmentMatrix) -> float:
    """Smallest eigenvalue of the block; +inf for the empty block (an empty
    block imposes no constraint on the convergence rate)."""
    if matrix.size == 0:
        return math.inf
    return _kernels.tri_min_eigenvalue(matrix.diag, matrix.offdiag)
