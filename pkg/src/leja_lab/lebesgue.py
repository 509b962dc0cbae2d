"""Interpolation operator norms and related growth diagnostics.

Fundamental-polynomial magnitudes are assembled in log space (a difference
of log-sums, exponentiated), which stays finite for rows far beyond the
point where raw distance products overflow.  Sup norms over the boundary
are estimated on clustered meshes and sharpened by local golden-section
refinement around the top mesh maxima.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .conformal import GreenModel, level_curve
from .geometry import SetSpec, build_mesh
from .kernels import lebesgue_on_mesh

DELTA_LADDER = (0.4, 0.2, 0.1, 0.05)

_REFINE_PASSES = 3
_REFINE_TOP = 5
_GOLDEN_ITERS = 24  # per pass


@dataclass(eq=False)
class LebesgueResult:
    n: int
    lam: float
    lam_root: float
    argmax: complex
    mesh_size: int
    refinement_passes: int
    uncertain: bool  # refinement moved the value by more than 0.1%


@dataclass(eq=False)
class SProductReport:
    """Distance product over the near neighbors of one node.

    ``members`` are the row points within ``delta`` of node k (excluding k
    itself); the product is carried as a log, with the plain value alongside
    whenever it is representable.
    """

    n: int
    k: int
    delta: float
    members: np.ndarray
    log_value: float
    value: float | None
    s_root: float

    @property
    def card(self) -> int:
        return len(self.members)


def node_log_weights(row) -> np.ndarray:
    """logw[k] = sum_{j != k} log|z_k - z_j|; rejects duplicate nodes."""
    pts = np.asarray(row, dtype=complex).ravel()
    if pts.size == 0:
        raise ValueError("empty node row")
    d = np.abs(pts[:, None] - pts[None, :])
    off = ~np.eye(pts.size, dtype=bool)
    if np.any(d[off] == 0.0):
        raise ValueError("duplicate nodes in row")
    with np.errstate(divide="ignore"):
        ld = np.where(off, np.log(np.where(off, d, 1.0)), 0.0)
    return ld.sum(axis=1)


def lebesgue_function(row, z):
    """Sum of |basis_k(z)| over the row (scalar or array of points).

    Points exactly equal to a node short-circuit to 1.
    """
    pts = np.asarray(row, dtype=complex).ravel()
    logw = node_log_weights(pts)
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    zz = np.atleast_1d(z).ravel()
    vals = lebesgue_on_mesh(
        np.ascontiguousarray(pts.real),
        np.ascontiguousarray(pts.imag),
        np.ascontiguousarray(logw),
        np.ascontiguousarray(zz.real),
        np.ascontiguousarray(zz.imag),
    )
    return float(vals[0]) if scalar else vals.reshape(np.shape(z))


def lagrange_basis(row, z) -> np.ndarray:
    """Complex basis values l_k(z), computed via complex log-sums.

    Exact nodes short-circuit to the indicator, so l_k(z_j) is exactly the
    Kronecker delta on the row itself.
    """
    pts = np.asarray(row, dtype=complex).ravel()
    n = pts.size
    if n == 0:
        raise ValueError("empty node row")
    z = complex(z)
    d = z - pts
    hit = np.nonzero(d == 0.0)[0]
    if hit.size:
        out = np.zeros(n, dtype=complex)
        out[hit[0]] = 1.0
        return out
    dd = pts[:, None] - pts[None, :]
    off = ~np.eye(n, dtype=bool)
    if np.any(dd[off] == 0.0):
        raise ValueError("duplicate nodes in row")
    logz = np.log(d)
    logw = np.where(off, np.log(np.where(off, dd, 1.0)), 0.0).sum(axis=1)
    total = logz.sum()
    return np.exp(total - logz - logw)


def lebesgue_constant(row, spec: SetSpec, mesh_factor: int = 10) -> LebesgueResult:
    """Sup of the Lebesgue function over the boundary.

    Evaluates on a clustered mesh of ``mesh_factor * n`` points, then runs
    local golden-section passes around the top mesh maxima.  The result is
    flagged uncertain when refinement moved the value by more than 0.1%.
    """
    pts = np.asarray(row, dtype=complex).ravel()
    n = pts.size
    if mesh_factor < 10:
        raise ValueError("mesh_factor must be >= 10")
    m = max(mesh_factor * n, 16)
    clustering = "uniform" if spec.closed else "endpoint_clustered"
    mesh = build_mesh(spec, m, clustering)
    logw = node_log_weights(pts)

    def eval_at(t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        zz = spec.point_at(np.mod(t, 1.0) if spec.closed else np.clip(t, 0.0, 1.0))
        return lebesgue_on_mesh(
            np.ascontiguousarray(pts.real), np.ascontiguousarray(pts.imag),
            np.ascontiguousarray(logw),
            np.ascontiguousarray(zz.real), np.ascontiguousarray(zz.imag),
        )

    vals = lebesgue_on_mesh(
        np.ascontiguousarray(pts.real), np.ascontiguousarray(pts.imag),
        np.ascontiguousarray(logw),
        np.ascontiguousarray(mesh.points.real),
        np.ascontiguousarray(mesh.points.imag),
    )
    top = np.argsort(vals)[::-1][:_REFINE_TOP]
    mesh_best = float(vals[top[0]])
    best_val = mesh_best
    best_t = float(mesh.params[top[0]])
    for i in top:
        lo, hi = _bracket(mesh.params, int(i), spec.closed)
        v, t = _golden_max(lambda t: float(eval_at(t)[0]), lo, hi,
                           _REFINE_PASSES * _GOLDEN_ITERS)
        if v > best_val:
            best_val, best_t = v, t
    argmax = complex(spec.point_at(np.mod(best_t, 1.0) if spec.closed else best_t))
    uncertain = best_val > mesh_best * 1.001
    return LebesgueResult(
        n=n,
        lam=best_val,
        lam_root=best_val ** (1.0 / n),
        argmax=argmax,
        mesh_size=m,
        refinement_passes=_REFINE_PASSES,
        uncertain=uncertain,
    )


def subexponential_table(scheme, ns, mesh_factor: int = 10) -> list[LebesgueResult]:
    """One operator-norm result per requested row size."""
    missing = [n for n in ns if n > scheme.n_max]
    if missing:
        raise ValueError(f"rows not available in scheme: {missing}")
    return [lebesgue_constant(scheme.row(n), scheme.spec, mesh_factor) for n in ns]


def bernstein_walsh_ratio(coeffs, spec: SetSpec, delta: float,
                          green: GreenModel, resolution: int = 2048) -> float:
    """Max of |p| on the delta level curve over max of |p| on the boundary.

    ``coeffs`` are power-basis coefficients, ascending.  Both maxima are
    taken on refined meshes; the ratio is bounded by (1+delta)^deg up to
    mesh tolerance.
    """
    c = np.asarray(coeffs, dtype=complex).ravel()
    nz = np.nonzero(c != 0.0)[0]
    if nz.size == 0:
        raise ValueError("zero polynomial")
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    c = c[: nz[-1] + 1]

    def p_abs(z):
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z)
        for ck in c[::-1]:
            acc = acc * z + ck
        return np.abs(acc)

    # boundary maximum
    m = max(resolution, 64 * len(c))
    clustering = "uniform" if spec.closed else "endpoint_clustered"
    mesh = build_mesh(spec, m, clustering)
    bvals = p_abs(mesh.points)
    bmax = _refine_param_max(
        lambda t: float(p_abs(spec.point_at(np.clip(t, 0.0, 1.0)
                                            if not spec.closed else np.mod(t, 1.0)))),
        mesh.params, bvals, spec.closed,
    )

    # level-curve maximum
    curve = level_curve(green, delta, resolution)
    cvals = p_abs(curve.points)
    if green.method in ("exact_segment", "exact_circle"):
        theta = np.arange(len(curve.points)) / len(curve.points)

        def curve_at(t):
            tt = np.mod(t, 1.0)
            if green.method == "exact_segment":
                w = (1.0 + delta) * np.exp(2j * math.pi * tt)
                z = green.spec.affine.apply((w + 1.0 / w) / 2.0)
            else:
                r = green.spec.radius * green.spec.affine.scale * (1.0 + delta)
                z = green.spec.affine.shift + r * np.exp(2j * math.pi * tt)
            return float(p_abs(z))

        cmax = _refine_param_max(curve_at, theta, cvals, True)
    else:
        cmax = float(cvals.max())  # polyline vertices only; tolerance reported by curve
    return cmax / bmax


def s_product(row, k: int, delta: float, n: int) -> SProductReport:
    """Distance product over the row's near neighbors of node k.

    The n-th root of the product is the quantity whose uniform lower bound
    (as delta shrinks) certifies that near neighbors cannot drag the row's
    distance products down exponentially.
    """
    pts = np.asarray(row, dtype=complex).ravel()
    if pts.size != n:
        raise ValueError(f"row has {pts.size} nodes, expected n = {n}")
    if not (0 <= k < n):
        raise ValueError(f"node index {k} out of range")
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    d = np.abs(pts - pts[k])
    mask = (d <= delta) & (np.arange(n) != k)
    members = pts[mask]
    if members.size:
        log_s = float(np.sum(np.log(d[mask])))
    else:
        log_s = 0.0  # empty product
    value = math.exp(log_s) if abs(log_s) < 700.0 else None
    return SProductReport(
        n=n, k=k, delta=delta, members=members,
        log_value=log_s, value=value, s_root=math.exp(log_s / n),
    )


def min_s_root(row, delta: float) -> SProductReport:
    """The s_product report minimizing s_root over k (lowest index on ties)."""
    pts = np.asarray(row, dtype=complex).ravel()
    n = pts.size
    best = None
    for k in range(n):
        rep = s_product(pts, k, delta, n)
        if best is None or rep.s_root < best.s_root:
            best = rep
    return best


# ---------------------------------------------------------------------------

def _bracket(params: np.ndarray, i: int, closed: bool):
    m = len(params)
    if closed:
        lo = params[i - 1] if i > 0 else params[-1] - 1.0
        hi = params[i + 1] if i < m - 1 else params[0] + 1.0
        return float(lo), float(hi)
    return float(params[max(i - 1, 0)]), float(params[min(i + 1, m - 1)])


def _golden_max(f, lo: float, hi: float, iters: int):
    """Golden-section maximization; returns the best value seen anywhere."""
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    c = hi - phi * (hi - lo)
    d = lo + phi * (hi - lo)
    fc, fd = f(c), f(d)
    best_v, best_t = (fc, c) if fc >= fd else (fd, d)
    for _ in range(iters):
        if fc < fd:
            lo, c, fc = c, d, fd
            d = lo + phi * (hi - lo)
            fd = f(d)
            if fd > best_v:
                best_v, best_t = fd, d
        else:
            hi, d, fd = d, c, fc
            c = hi - phi * (hi - lo)
            fc = f(c)
            if fc > best_v:
                best_v, best_t = fc, c
        if hi - lo < 1e-14:
            break
    return best_v, best_t


def _refine_param_max(f, params: np.ndarray, vals: np.ndarray, closed: bool,
                      top: int = 3) -> float:
    order = np.argsort(vals)[::-1][:top]
    best = float(vals[order[0]])
    for i in order:
        lo, hi = _bracket(params, int(i), closed)
        v, _ = _golden_max(f, lo, hi, _REFINE_PASSES * _GOLDEN_ITERS)
        best = max(best, v)
    return best
