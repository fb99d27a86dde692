"""Shared dense reference computations for the test suite."""

import numpy as np


def dense_trace_inverse(diag, offdiag) -> float:
    """Trace of the dense inverse, with one Newton refinement step.

    A plain float64 inverse of an ill-conditioned m~500 block carries a
    relative trace error up to ~1e-9, too coarse to referee a 1e-10 check.
    One refinement step with the residual accumulated in extended precision
    recovers the trace to ~1e-13: tr(X1) = tr(X0) + tr(X0 (I - T X0)), and
    the correction term only needs an elementwise product, O(m^2).
    """
    d = np.asarray(diag, dtype=np.float64)
    e = np.asarray(offdiag, dtype=np.float64)
    m = d.shape[0]
    dense = np.zeros((m, m))
    idx = np.arange(m)
    dense[idx, idx] = d
    if m > 1:
        dense[idx[:-1], idx[:-1] + 1] = e
        dense[idx[:-1] + 1, idx[:-1]] = e
    x0 = np.linalg.inv(dense)

    x0_ld = x0.astype(np.longdouble)
    tx = d.astype(np.longdouble)[:, None] * x0_ld
    if m > 1:
        e_ld = e.astype(np.longdouble)
        tx[:-1] += e_ld[:, None] * x0_ld[1:]
        tx[1:] += e_ld[:, None] * x0_ld[:-1]
    residual = np.eye(m, dtype=np.longdouble) - tx
    correction = np.sum(x0_ld.T * residual)
    return float(np.trace(x0_ld) + correction)
