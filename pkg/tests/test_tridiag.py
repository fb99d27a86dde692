import math
import random

import numpy as np
import pytest
from oracles import dense_trace_inverse
from scipy.linalg import eigh_tridiagonal

from leadersel import (
    GraphSpec,
    LeaderSet,
    Metric,
    NotPositiveDefinite,
    SegmentMatrix,
    Topology,
    follower_segments,
    min_eigenvalue,
    segment_matrix,
    trace_inverse,
    uniform_policy,
)

GOLDEN = (3.0 - math.sqrt(5.0)) / 2.0


def random_block(rng, m, metric=Metric.COHERENCE):
    """A grounded-Laplacian follower block of size m from a seeded path
    instance: a leader-bounded interior gap, or a free-ended prefix."""
    if rng.random() < 0.5:
        n, leaders = m + 2, LeaderSet((1, m + 2))  # both ends bounded
    else:
        n, leaders = m + 1, LeaderSet((m + 1,))  # free left end
    spec = uniform_policy(Topology.PATH, n, metric, rng.randrange(2**32))
    for seg in follower_segments(spec, leaders):
        if seg.size == m:
            return segment_matrix(spec, seg)
    raise AssertionError("no block of requested size")


class TestSegmentMatrix:
    def test_interior_gap_coherence(self):
        spec = GraphSpec(Topology.PATH, 4, Metric.COHERENCE, (1.0,) * 3)
        seg = follower_segments(spec, LeaderSet((2,)))[1]  # nodes (3, 4)
        M = segment_matrix(spec, seg)
        assert M.diag.tolist() == [2.0, 1.0]
        assert M.offdiag.tolist() == [-1.0]

    def test_ring_singleton_between_leaders(self):
        spec = GraphSpec(Topology.RING, 4, Metric.CONVERGENCE, (1.0,) * 4)
        segs = follower_segments(spec, LeaderSet((1, 3)))
        M = segment_matrix(spec, segs[0])  # node (2)
        assert M.diag.tolist() == [2.0]
        assert M.offdiag.size == 0

    def test_empty_segment(self):
        spec = GraphSpec(Topology.PATH, 4, Metric.COHERENCE, (1.0,) * 3)
        seg = follower_segments(spec, LeaderSet((2, 3)))[1]
        M = segment_matrix(spec, seg)
        assert M.size == 0

    def test_coherence_uses_reciprocal_weights(self):
        spec = GraphSpec(Topology.PATH, 3, Metric.COHERENCE, (0.5, 0.25))
        seg = follower_segments(spec, LeaderSet((1,)))[1]  # nodes (2, 3)
        M = segment_matrix(spec, seg)
        assert M.diag.tolist() == [2.0 + 4.0, 4.0]
        assert M.offdiag.tolist() == [-4.0]

    def test_ring_wrap_coupling(self):
        spec = GraphSpec(Topology.RING, 4, Metric.CONVERGENCE, (1.0, 1.0, 1.0, 3.0))
        seg = follower_segments(spec, LeaderSet((2, 3)))[1]  # nodes (4, 1)
        M = segment_matrix(spec, seg)
        assert M.diag.tolist() == [4.0, 4.0]
        assert M.offdiag.tolist() == [-3.0]  # the (4, 1) closure edge

    def test_shape_validation(self):
        with pytest.raises(ValueError):
            SegmentMatrix(np.array([1.0, 2.0]), np.array([]))


class TestTraceInverse:
    def test_identity(self):
        M = SegmentMatrix(np.ones(5), np.zeros(4))
        assert trace_inverse(M) == pytest.approx(5.0, rel=1e-14)

    def test_small_dense_cofactor(self):
        M = SegmentMatrix(np.array([2.0, 2.0, 2.0]), np.array([-1.0, -1.0]))
        assert trace_inverse(M) == pytest.approx(2.5, rel=1e-14)

    def test_empty_block(self):
        M = SegmentMatrix(np.array([]), np.array([]))
        assert trace_inverse(M) == 0.0

    def test_not_positive_definite(self):
        M = SegmentMatrix(np.array([1.0, 1.0]), np.array([-2.0]))
        with pytest.raises(NotPositiveDefinite):
            trace_inverse(M)

    def test_matches_dense_inverse(self):
        rng = random.Random(7)
        worst = 0.0
        for _ in range(40):
            m = rng.randint(1, 500)
            metric = rng.choice([Metric.COHERENCE, Metric.CONVERGENCE])
            M = random_block(rng, m, metric)
            got = trace_inverse(M)
            want = dense_trace_inverse(M.diag, M.offdiag)
            worst = max(worst, abs(got - want) / abs(want))
        assert worst < 1e-10

    def test_long_block_with_large_entries(self):
        # raw determinant recurrences overflow near m ~ 1e3 for couplings > 1;
        # the pivot form must stay finite and accurate
        m = 1200
        M = SegmentMatrix(np.full(m, 4.0), np.full(m - 1, -2.0))
        got = trace_inverse(M)
        assert math.isfinite(got)
        want = dense_trace_inverse(M.diag, M.offdiag)
        assert got == pytest.approx(want, rel=1e-10)

    def test_monotone_in_segment_length_unit_weights(self):
        spec = GraphSpec(Topology.PATH, 30, Metric.COHERENCE, (1.0,) * 29)
        values = []
        for right in range(3, 20):
            seg = follower_segments(spec, LeaderSet((1, right)))[1]
            values.append(trace_inverse(segment_matrix(spec, seg)))
        assert all(b >= a for a, b in zip(values, values[1:]))


class TestMinEigenvalue:
    def test_identity(self):
        M = SegmentMatrix(np.ones(3), np.zeros(2))
        assert min_eigenvalue(M) == pytest.approx(1.0, abs=1e-10)

    def test_two_by_two_characteristic_polynomial(self):
        M = SegmentMatrix(np.array([2.0, 1.0]), np.array([-1.0]))
        assert min_eigenvalue(M) == pytest.approx(GOLDEN, abs=1e-10)

    def test_empty_block(self):
        M = SegmentMatrix(np.array([]), np.array([]))
        assert min_eigenvalue(M) == math.inf

    def test_single_entry_exact(self):
        M = SegmentMatrix(np.array([3.5]), np.array([]))
        assert min_eigenvalue(M) == 3.5

    def test_matches_dense_eigensolver(self):
        rng = random.Random(11)
        worst = 0.0
        for _ in range(40):
            m = rng.randint(1, 500)
            metric = rng.choice([Metric.COHERENCE, Metric.CONVERGENCE])
            M = random_block(rng, m, metric)
            got = min_eigenvalue(M)
            if m == 1:
                want = float(M.diag[0])
            else:
                want = float(eigh_tridiagonal(M.diag, M.offdiag,
                                              eigvals_only=True)[0])
            worst = max(worst, abs(got - want))
        assert worst < 1e-8

    def test_cauchy_interlacing_on_nested_segments(self):
        rng = random.Random(3)
        for _ in range(30):
            spec = uniform_policy(Topology.PATH, 20, Metric.CONVERGENCE,
                                  rng.randrange(2**32))
            inner = follower_segments(spec, LeaderSet((5, 12)))[1]
            outer = follower_segments(spec, LeaderSet((3, 15)))[1]
            lam_inner = min_eigenvalue(segment_matrix(spec, inner))
            lam_outer = min_eigenvalue(segment_matrix(spec, outer))
            assert lam_inner >= lam_outer - 1e-9

    def test_weight_scaling(self):
        base = uniform_policy(Topology.PATH, 15, Metric.CONVERGENCE, 99)
        for c in (0.125, 8.0):
            scaled = GraphSpec(Topology.PATH, 15, Metric.CONVERGENCE,
                               tuple(c * w for w in base.edge_weights))
            for leaders in (LeaderSet((4,)), LeaderSet((2, 9))):
                for s_base, s_scaled in zip(follower_segments(base, leaders),
                                            follower_segments(scaled, leaders)):
                    lam0 = min_eigenvalue(segment_matrix(base, s_base))
                    lam1 = min_eigenvalue(segment_matrix(scaled, s_scaled))
                    assert lam1 == pytest.approx(c * lam0, rel=1e-7)
