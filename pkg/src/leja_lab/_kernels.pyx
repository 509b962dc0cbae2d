# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: greedy node selection and Lebesgue-sum evaluation.

Semantics match leja_lab._kernels_py; keep both in sync.
"""
import numpy as np

from libc.math cimport INFINITY, exp, log


def leja_indices(double[::1] xr, double[::1] xi, Py_ssize_t count, Py_ssize_t start):
    """Greedy max-log-distance-sum selection over mesh candidates.

    Returns the selected candidate indices in selection order.  Running
    per-candidate log-sums make the total cost O(count * len(mesh)).  Exact
    score ties resolve to the lowest candidate index.
    """
    cdef Py_ssize_t m = xr.shape[0]
    if xi.shape[0] != m:
        raise ValueError("coordinate arrays must have equal length")
    if count < 1 or count > m:
        raise ValueError("count out of range")
    if start < 0 or start >= m:
        raise ValueError("start index out of range")

    out = np.empty(count, dtype=np.intp)
    score_arr = np.zeros(m, dtype=np.float64)
    d2_arr = np.empty(m, dtype=np.float64)
    cdef Py_ssize_t[::1] out_v = out
    cdef double[::1] score = score_arr
    cdef double[::1] d2 = d2_arr
    cdef Py_ssize_t k, i, cur, nxt
    cdef double px, py, dx, dy, s, bestval

    cur = start
    with np.errstate(divide="ignore"):
        for k in range(count):
            if k > 0 and bestval == -INFINITY:
                raise ValueError("ran out of distinct candidates")
            out_v[k] = cur
            px = xr[cur]
            py = xi[cur]
            for i in range(m):
                dx = xr[i] - px
                dy = xi[i] - py
                d2[i] = dx * dx + dy * dy
            # vectorized log; 0 -> -inf marks the chosen candidate and twins
            np.log(d2_arr, out=d2_arr)
            # accumulate with the next argmax fused in; strict > keeps the
            # lowest index on exact ties
            nxt = 0
            bestval = -INFINITY
            for i in range(m):
                s = score[i] + 0.5 * d2[i]
                score[i] = s
                if s > bestval:
                    bestval = s
                    nxt = i
            cur = nxt
    return out


def lebesgue_on_mesh(double[::1] nr, double[::1] ni, double[::1] logw,
                     double[::1] zr, double[::1] zi):
    """Sum of |basis_k(z)| per evaluation point, from log-space weights.

    logw[k] must hold sum_{j != k} log|node_k - node_j|.  Points exactly
    equal to a node short-circuit to 1 (interpolation property).
    """
    cdef Py_ssize_t n = nr.shape[0]
    cdef Py_ssize_t m = zr.shape[0]
    if ni.shape[0] != n or logw.shape[0] != n or zi.shape[0] != m:
        raise ValueError("array lengths do not match")

    out = np.empty(m, dtype=np.float64)
    scratch = np.empty(n, dtype=np.float64)
    cdef double[::1] out_v = out
    cdef double[::1] ld = scratch
    cdef Py_ssize_t p, j, k
    cdef double x, y, dx, dy, d2, s, acc
    cdef bint exact

    for p in range(m):
        x = zr[p]
        y = zi[p]
        s = 0.0
        exact = False
        for j in range(n):
            dx = x - nr[j]
            dy = y - ni[j]
            d2 = dx * dx + dy * dy
            if d2 == 0.0:
                exact = True
                break
            ld[j] = 0.5 * log(d2)
            s += ld[j]
        if exact:
            out_v[p] = 1.0
            continue
        acc = 0.0
        for k in range(n):
            acc += exp(s - ld[k] - logw[k])
        out_v[p] = acc
    return out
