"""Pure-numpy fallback for the hot kernels.

Semantics match leja_lab._kernels (the compiled extension); keep both in
sync.  Summation order differs from the C loops (numpy uses pairwise
reduction), so values agree to rounding, not bit-for-bit.
"""
import numpy as np

_CHUNK = 4096


def leja_indices(xr, xi, count, start):
    """Greedy max-log-distance-sum selection over mesh candidates."""
    xr = np.ascontiguousarray(xr, dtype=float)
    xi = np.ascontiguousarray(xi, dtype=float)
    m = xr.shape[0]
    if xi.shape[0] != m:
        raise ValueError("coordinate arrays must have equal length")
    if not (1 <= count <= m):
        raise ValueError("count out of range")
    if not (0 <= start < m):
        raise ValueError("start index out of range")
    score = np.zeros(m)
    out = np.empty(count, dtype=np.intp)
    cur = int(start)
    for k in range(count):
        if k > 0:
            cur = int(np.argmax(score))  # first max = lowest index
            if score[cur] == -np.inf:
                raise ValueError("ran out of distinct candidates")
        out[k] = cur
        dx = xr - xr[cur]
        dy = xi - xi[cur]
        with np.errstate(divide="ignore"):
            score += 0.5 * np.log(dx * dx + dy * dy)
    return out


def lebesgue_on_mesh(nr, ni, logw, zr, zi):
    """Sum of |basis_k(z)| per evaluation point, from log-space weights."""
    nr = np.asarray(nr, dtype=float)
    ni = np.asarray(ni, dtype=float)
    logw = np.asarray(logw, dtype=float)
    zr = np.asarray(zr, dtype=float)
    zi = np.asarray(zi, dtype=float)
    n = nr.shape[0]
    m = zr.shape[0]
    if ni.shape[0] != n or logw.shape[0] != n or zi.shape[0] != m:
        raise ValueError("array lengths do not match")
    out = np.empty(m)
    for lo in range(0, m, _CHUNK):
        hi = min(lo + _CHUNK, m)
        dx = zr[lo:hi, None] - nr[None, :]
        dy = zi[lo:hi, None] - ni[None, :]
        d2 = dx * dx + dy * dy
        exact = (d2 == 0.0).any(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            ld = 0.5 * np.log(d2)
            s = ld.sum(axis=1)
            vals = np.exp(s[:, None] - ld - logw[None, :]).sum(axis=1)
        vals[exact] = 1.0
        out[lo:hi] = vals
    return out
