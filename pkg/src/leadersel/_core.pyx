# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled numeric core: tridiagonal block kernels and the hop-indexed
dynamic program. Semantics (expression order, guards, tolerances) mirror
``_purekernels`` exactly; that module is the readable reference."""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, fabs

from .errors import NoConvergence, NotPositiveDefinite

cnp.import_array()

BACKEND_NAME = "cython"

cdef double TIE_TOL = 1e-12
cdef double PD_REL_EPS = 1e-14
cdef double EIG_ABS_TOL = 1e-10
cdef int EIG_MAX_ITER = 2000
cdef double STURM_FLOOR = 1e-300


# status codes for the trace kernel
cdef enum:
    OK = 0
    BAD_LEADING = 1
    BAD_TRAILING = 2
    BAD_DENOM = 3


cdef int _trace_inverse_raw(const double* d, const double* e, Py_ssize_t m,
                            double* q, double* p, double* out) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef double maxd, floor_, denom, total
    if m == 0:
        out[0] = 0.0
        return OK
    maxd = d[0]
    for i in range(1, m):
        if d[i] > maxd:
            maxd = d[i]
    floor_ = PD_REL_EPS * maxd
    q[0] = d[0]
    if q[0] <= floor_:
        return BAD_LEADING
    for i in range(1, m):
        q[i] = d[i] - (e[i - 1] * e[i - 1]) / q[i - 1]
        if q[i] <= floor_:
            return BAD_LEADING
    p[m - 1] = d[m - 1]
    for i in range(m - 2, -1, -1):
        if p[i + 1] <= floor_:
            return BAD_TRAILING
        p[i] = d[i] - (e[i] * e[i]) / p[i + 1]
    total = 0.0
    for j in range(m):
        denom = d[j]
        if j > 0:
            denom -= (e[j - 1] * e[j - 1]) / q[j - 1]
        if j < m - 1:
            denom -= (e[j] * e[j]) / p[j + 1]
        if denom <= floor_:
            return BAD_DENOM
        total += 1.0 / denom
    out[0] = total
    return OK


cdef int _sturm_count(const double* d, const double* e, Py_ssize_t m,
                      double x) noexcept nogil:
    cdef Py_ssize_t i
    cdef int count = 0
    cdef double q = 0.0
    for i in range(m):
        if i == 0:
            q = d[0] - x
        else:
            if -STURM_FLOOR < q < STURM_FLOOR:
                q = -STURM_FLOOR if q <= 0.0 else STURM_FLOOR
            q = d[i] - x - (e[i - 1] * e[i - 1]) / q
        if q < 0.0:
            count += 1
    return count


cdef int _min_eig_raw(const double* d, const double* e, Py_ssize_t m,
                      double* out) noexcept nogil:
    cdef Py_ssize_t i
    cdef double lo, hi, radius, mid
    cdef int iterations = 0
    if m == 1:
        out[0] = d[0]
        return OK
    lo = INFINITY
    hi = INFINITY
    for i in range(m):
        radius = 0.0
        if i > 0:
            radius += fabs(e[i - 1])
        if i < m - 1:
            radius += fabs(e[i])
        if d[i] - radius < lo:
            lo = d[i] - radius
        if d[i] < hi:
            hi = d[i]
    if lo < 0.0:
        lo = 0.0
    while hi - lo > EIG_ABS_TOL:
        iterations += 1
        if iterations > EIG_MAX_ITER:
            return 1
        mid = 0.5 * (lo + hi)
        if _sturm_count(d, e, m, mid) >= 1:
            hi = mid
        else:
            lo = mid
    out[0] = 0.5 * (lo + hi)
    return OK


def tri_trace_inverse(diag, offdiag) -> float:
    """Trace of the inverse of a symmetric tridiagonal PD matrix. O(m)."""
    cdef cnp.ndarray[double, ndim=1] d = np.ascontiguousarray(diag, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] e = np.ascontiguousarray(offdiag, dtype=np.float64)
    cdef Py_ssize_t m = d.shape[0]
    if m == 0:
        return 0.0
    cdef cnp.ndarray[double, ndim=1] q = np.empty(m)
    cdef cnp.ndarray[double, ndim=1] p = np.empty(m)
    cdef double out = 0.0
    cdef int status = _trace_inverse_raw(&d[0], &e[0] if m > 1 else NULL,
                                         m, &q[0], &p[0], &out)
    if status == BAD_LEADING:
        raise NotPositiveDefinite("leading pivot failed")
    if status == BAD_TRAILING:
        raise NotPositiveDefinite("trailing pivot failed")
    if status == BAD_DENOM:
        raise NotPositiveDefinite("diagonal denominator failed")
    return out


def sturm_count_below(diag, offdiag, double x) -> int:
    """Number of eigenvalues strictly below x."""
    cdef cnp.ndarray[double, ndim=1] d = np.ascontiguousarray(diag, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] e = np.ascontiguousarray(offdiag, dtype=np.float64)
    cdef Py_ssize_t m = d.shape[0]
    if m == 0:
        return 0
    return _sturm_count(&d[0], &e[0] if m > 1 else NULL, m, x)


def tri_min_eigenvalue(diag, offdiag) -> float:
    """Smallest eigenvalue by Sturm bisection, to absolute EIG_ABS_TOL."""
    cdef cnp.ndarray[double, ndim=1] d = np.ascontiguousarray(diag, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] e = np.ascontiguousarray(offdiag, dtype=np.float64)
    cdef Py_ssize_t m = d.shape[0]
    if m == 0:
        raise ValueError("empty matrix has no eigenvalues")
    cdef double out = 0.0
    if _min_eig_raw(&d[0], &e[0] if m > 1 else NULL, m, &out):
        raise NoConvergence("bisection iteration budget exhausted")
    return out


cdef double _block_value_c(const double* d, const double* e, Py_ssize_t a,
                           Py_ssize_t b, bint eig_mode, double* q, double* p,
                           int* status) noexcept nogil:
    """Value of the inclusive sub-block [a..b]; +inf for a non-PD block in
    trace mode. status is set nonzero only on eigensolver failure."""
    cdef double out = 0.0
    cdef Py_ssize_t m = b - a + 1
    if eig_mode:
        if _min_eig_raw(d + a, e + a, m, &out):
            status[0] = 1
        return out
    if _trace_inverse_raw(d + a, e + a, m, q, p, &out) != OK:
        return INFINITY
    return 0.5 * out


def contiguous_block_table(diag, offdiag, bint eig_mode):
    """Table V with V[a, b] = block value of range [a..b]; lower triangle NaN."""
    cdef cnp.ndarray[double, ndim=1] d = np.ascontiguousarray(diag, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] e = np.ascontiguousarray(offdiag, dtype=np.float64)
    cdef Py_ssize_t m = d.shape[0]
    cdef cnp.ndarray[double, ndim=2] table = np.full((m, m), np.nan)
    if m == 0:
        return table
    cdef cnp.ndarray[double, ndim=1] q = np.empty(m)
    cdef cnp.ndarray[double, ndim=1] p = np.empty(m)
    cdef Py_ssize_t a, b
    cdef int status = 0
    cdef const double* eptr = &e[0] if m > 1 else NULL
    with nogil:
        for a in range(m):
            for b in range(a, m):
                table[a, b] = _block_value_c(&d[0], eptr, a, b, eig_mode,
                                             &q[0], &p[0], &status)
    if status:
        raise NoConvergence("bisection iteration budget exhausted")
    return table


def ring_gap_table(diag2, offdiag2, Py_ssize_t n, bint eig_mode):
    """Table G with G[u-1, v-1] = value of the clockwise gap from u to v on a
    ring of n nodes (diagonal: ring minus that one leader); diag2/offdiag2 are
    the ring unrolled to a 2n-1 node path."""
    cdef cnp.ndarray[double, ndim=1] d2 = np.ascontiguousarray(diag2, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] e2 = np.ascontiguousarray(offdiag2, dtype=np.float64)
    if d2.shape[0] != 2 * n - 1:
        raise ValueError("unrolled diagonal must have length 2n-1")
    cdef double empty = INFINITY if eig_mode else 0.0
    cdef cnp.ndarray[double, ndim=2] table = np.empty((n, n))
    cdef cnp.ndarray[double, ndim=1] q = np.empty(2 * n - 1)
    cdef cnp.ndarray[double, ndim=1] p = np.empty(2 * n - 1)
    cdef Py_ssize_t u, v, length
    cdef int status = 0
    with nogil:
        for u in range(1, n + 1):
            for v in range(1, n + 1):
                if u == v:
                    length = n - 1
                else:
                    length = (v - u - 1) % n
                    if length < 0:
                        length += n
                if length == 0:
                    table[u - 1, v - 1] = empty
                else:
                    table[u - 1, v - 1] = _block_value_c(
                        &d2[0], &e2[0], u, u + length - 1, eig_mode,
                        &q[0], &p[0], &status)
    if status:
        raise NoConvergence("bisection iteration budget exhausted")
    return table


def bf_tables(Py_ssize_t num_nodes, indptr, srcs, weights, Py_ssize_t source,
              Py_ssize_t hops, bint widest):
    """Hop-indexed DP over a digraph in incoming-CSR form; see the pure lane
    for the full contract."""
    cdef cnp.ndarray[cnp.int64_t, ndim=1] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] sr = np.ascontiguousarray(srcs, dtype=np.int32)
    cdef cnp.ndarray[double, ndim=1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef double unreached = -INFINITY if widest else INFINITY
    cdef cnp.ndarray[double, ndim=2] dist = np.full((hops + 1, num_nodes), unreached)
    cdef cnp.ndarray[cnp.int32_t, ndim=2] pred = np.full((hops + 1, num_nodes), -1,
                                                         dtype=np.int32)
    dist[0, source] = INFINITY if widest else 0.0
    cdef Py_ssize_t m, v, idx, u
    cdef double best, cand, prev
    cdef int best_u
    with nogil:
        for m in range(1, hops + 1):
            for v in range(num_nodes):
                best = unreached
                best_u = -1
                for idx in range(ip[v], ip[v + 1]):
                    u = sr[idx]
                    prev = dist[m - 1, u]
                    if prev == unreached:
                        continue
                    if widest:
                        cand = prev if prev < w[idx] else w[idx]
                        if cand > best + TIE_TOL:
                            best = cand
                            best_u = <int> u
                    else:
                        cand = prev + w[idx]
                        if cand < best - TIE_TOL:
                            best = cand
                            best_u = <int> u
                dist[m, v] = best
                pred[m, v] = best_u
    return dist, pred
