"""Separation audits: node gaps measured against level-curve distances.

The audited quantity is asymmetric on purpose: each ordered pair (k, j)
compares |z_k - z_j| against the level distance at the reference node z_k,
at level delta = 1/n, never smoothed.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .conformal import GreenModel, rho_many, rho_formula_segment


@dataclass(eq=False)
class SeparationReport:
    n: int
    min_ratio: float
    k: int
    j: int
    rule: str  # rho_exact | rho_formula_segment
    delta: float


def separation_ratios(row, green: GreenModel, n: int) -> SeparationReport:
    """Min over ordered pairs of |z_k - z_j| / level-distance at z_k.

    The level is exactly 1/n.  Ties in the arg-min resolve to the lowest
    (k, j) in lexicographic order.
    """
    pts = np.asarray(row, dtype=complex).ravel()
    if pts.size < 2:
        raise ValueError("need at least two nodes")
    if pts.size != n:
        raise ValueError(f"row has {pts.size} nodes, expected n = {n}")
    d = np.abs(pts[:, None] - pts[None, :])
    off = ~np.eye(n, dtype=bool)
    if np.any(d[off] == 0.0):
        raise ValueError("duplicate nodes in row")
    delta = 1.0 / n
    rho_vals = rho_many(green, delta, pts)
    d_masked = np.where(off, d, np.inf)
    j_near = np.argmin(d_masked, axis=1)
    ratios = d_masked[np.arange(n), j_near] / rho_vals
    k = int(np.argmin(ratios))
    return SeparationReport(
        n=n, min_ratio=float(ratios[k]), k=k, j=int(j_near[k]),
        rule="rho_exact", delta=delta,
    )


def separation_trend(scheme, ns, green: GreenModel) -> list[SeparationReport]:
    """One separation report per requested row size."""
    missing = [n for n in ns if n > scheme.n_max]
    if missing:
        raise ValueError(f"rows not available in scheme: {missing}")
    return [separation_ratios(scheme.row(n), green, n) for n in ns]


def distancing_rule_b(row, n: int) -> SeparationReport:
    """Closed-form segment audit: gap over the symmetric three-term scale.

    The denominator for a pair (j, k) is sqrt(1-|z_j|)/n + sqrt(1-|z_k|)/n
    + 1/n^2, assembled from the per-node formula with the shared 1/n^2 term
    counted once.  Segment rows only (real nodes in [-1, 1]).
    """
    pts = np.asarray(row, dtype=complex).ravel()
    if pts.size < 2:
        raise ValueError("need at least two nodes")
    if pts.size != n:
        raise ValueError(f"row has {pts.size} nodes, expected n = {n}")
    if np.any(np.abs(pts.imag) > 1e-12) or np.any(np.abs(pts.real) > 1.0 + 1e-12):
        raise ValueError("rule applies to real segment rows in [-1, 1] only")
    x = np.clip(pts.real, -1.0, 1.0)
    if len(np.unique(x)) != n:
        raise ValueError("duplicate nodes in row")
    rf = rho_formula_segment(x, n)
    gap = np.abs(x[:, None] - x[None, :])
    denom = rf[:, None] + rf[None, :] - 1.0 / (n * n)
    off = ~np.eye(n, dtype=bool)
    ratios = np.where(off, gap / denom, np.inf)
    flat = int(np.argmin(ratios))
    k, j = divmod(flat, n)
    return SeparationReport(
        n=n, min_ratio=float(ratios[k, j]), k=k, j=j,
        rule="rho_formula_segment", delta=1.0 / n,
    )
