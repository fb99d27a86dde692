"""Both kernel lanes must produce identical floats: the pure lane mirrors the
compiled core expression-for-expression, so results are compared exactly."""

import math
import random

import numpy as np
import pytest

from leadersel._kernels import available_backends

LANES = available_backends()

pytestmark = pytest.mark.skipif(
    "cython" not in LANES, reason="compiled core not built"
)


def lanes():
    return LANES["python"], LANES["cython"]


def random_pd_block(rng, m):
    e = np.array([-rng.uniform(0.1, 5.0) for _ in range(max(m - 1, 0))])
    slack = np.array([rng.uniform(0.0, 2.0) for _ in range(m)])
    d = slack.copy()
    for i in range(m - 1):
        d[i] += abs(e[i])
        d[i + 1] += abs(e[i])
    d += 0.05  # strict dominance, guarantees positive definiteness
    return d, e


class TestBlockKernels:
    def test_trace_inverse_identical(self):
        py, cy = lanes()
        rng = random.Random(1)
        for _ in range(200):
            d, e = random_pd_block(rng, rng.randint(1, 60))
            assert py.tri_trace_inverse(d, e) == cy.tri_trace_inverse(d, e)

    def test_min_eigenvalue_identical(self):
        py, cy = lanes()
        rng = random.Random(2)
        for _ in range(200):
            d, e = random_pd_block(rng, rng.randint(1, 60))
            assert py.tri_min_eigenvalue(d, e) == cy.tri_min_eigenvalue(d, e)

    def test_sturm_count_identical(self):
        py, cy = lanes()
        rng = random.Random(3)
        for _ in range(200):
            d, e = random_pd_block(rng, rng.randint(1, 40))
            x = rng.uniform(-1.0, float(d.max()) + 1.0)
            assert py.sturm_count_below(d, e, x) == cy.sturm_count_below(d, e, x)

    def test_pd_failure_agrees(self):
        py, cy = lanes()
        d = np.array([1.0, 1.0])
        e = np.array([-2.0])
        from leadersel.errors import NotPositiveDefinite
        for lane in (py, cy):
            with pytest.raises(NotPositiveDefinite):
                lane.tri_trace_inverse(d, e)


class TestTableKernels:
    def test_contiguous_block_table_identical(self):
        py, cy = lanes()
        rng = random.Random(4)
        for _ in range(20):
            m = rng.randint(1, 25)
            d, e = random_pd_block(rng, m)
            for eig_mode in (False, True):
                a = py.contiguous_block_table(d, e, eig_mode)
                b = cy.contiguous_block_table(d, e, eig_mode)
                mask = ~np.isnan(a)
                assert (np.isnan(a) == np.isnan(b)).all()
                assert (a[mask] == b[mask]).all()

    def test_ring_gap_table_identical(self):
        py, cy = lanes()
        rng = random.Random(5)
        for _ in range(20):
            n = rng.randint(3, 18)
            d2, e2 = random_pd_block(rng, 2 * n - 1)
            for eig_mode in (False, True):
                a = py.ring_gap_table(d2, e2, n, eig_mode)
                b = cy.ring_gap_table(d2, e2, n, eig_mode)
                finite = np.isfinite(a)
                assert (np.isfinite(b) == finite).all()
                assert (a[finite] == b[finite]).all()
                assert (a[~finite] == b[~finite]).all()  # inf pattern matches


class TestSolverKernel:
    def test_bf_tables_identical(self):
        py, cy = lanes()
        rng = random.Random(6)
        for _ in range(60):
            nn = rng.randint(2, 9)
            pairs = [(a, b) for a in range(nn) for b in range(nn) if a != b]
            rng.shuffle(pairs)
            chosen = sorted(pairs[: rng.randint(1, len(pairs))],
                            key=lambda p: (p[1], p[0]))
            tails = np.array([p[0] for p in chosen], dtype=np.int32)
            heads = np.array([p[1] for p in chosen], dtype=np.int32)
            w = np.array([math.inf if rng.random() < 0.1 else rng.uniform(0, 5)
                          for _ in chosen])
            indptr = np.zeros(nn + 1, dtype=np.int64)
            np.cumsum(np.bincount(heads, minlength=nn), out=indptr[1:])
            hops = rng.randint(1, 6)
            for widest in (False, True):
                d1, p1 = py.bf_tables(nn, indptr, tails, w, 0, hops, widest)
                d2, p2 = cy.bf_tables(nn, indptr, tails, w, 0, hops, widest)
                assert (d1 == d2).all()
                assert (p1 == p2).all()
