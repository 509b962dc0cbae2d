"""Equilibrium measures on arcs and the statistics comparing node rows to them.

Measures live on 1-D parametrized boundaries, so distribution comparisons
reduce to CDFs in the intrinsic parameter: the sup-distance between an
empirical node CDF and the equilibrium CDF is the computable surrogate used
for weak-star convergence throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import BoundaryMesh, SetSpec, build_mesh

_REFERENCE_N = 1024
_CLOSED_CUTS = 8


def arcsine_cdf(x):
    """1/2 + arcsin(x)/pi on [-1, 1]: equilibrium CDF of the segment."""
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0 + 1e-12):
        raise ValueError("x must lie in [-1, 1]")
    out = 0.5 + np.arcsin(np.clip(x, -1.0, 1.0)) / math.pi
    return float(out) if out.ndim == 0 else out


@dataclass(eq=False)
class EquilibriumModel:
    """Equilibrium measure of a compact set, exposed as a CDF in arc parameter.

    Methods: arcsine_segment (closed form), uniform_circle (closed form),
    empirical (step CDF of a large reference node sequence).
    """

    method: str
    spec: SetSpec
    ref_params: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.method not in ("arcsine_segment", "uniform_circle", "empirical"):
            raise ValueError(f"unknown equilibrium method {self.method!r}")
        if self.method == "empirical":
            self.ref_params = np.sort(np.asarray(self.ref_params, dtype=float).ravel())
            if self.ref_params.size < 2:
                raise ValueError("empirical model needs reference nodes")

    def cdf_param(self, t):
        """CDF value at arc parameter t in [0, 1] (vectorized)."""
        t = np.asarray(t, dtype=float)
        if self.method == "arcsine_segment":
            out = arcsine_cdf(2.0 * np.clip(t, 0.0, 1.0) - 1.0)
        elif self.method == "uniform_circle":
            out = np.clip(t, 0.0, 1.0)
        else:
            out = np.searchsorted(self.ref_params, t, side="right") / self.ref_params.size
        return out

    @property
    def closed(self) -> bool:
        return self.spec.closed


def equilibrium_for(spec: SetSpec, reference_n: int = _REFERENCE_N) -> EquilibriumModel:
    """Closed-form model where available, else an empirical reference model."""
    if spec.kind == "segment":
        return EquilibriumModel("arcsine_segment", spec)
    if spec.kind == "circle":
        return EquilibriumModel("uniform_circle", spec)
    from .nodes import leja_generate

    # Reference-grade candidate mesh; CDF accuracy needs far fewer candidates
    # than node-separation audits, so the quadratic rule is capped here.
    m = min(max(4096, 8 * reference_n * reference_n), 1 << 16)
    clustering = "uniform" if spec.closed else "endpoint_clustered"
    mesh = build_mesh(spec, m, clustering)
    pts = leja_generate(mesh, reference_n)
    return EquilibriumModel("empirical", spec, ref_params=spec.param_of(pts))


@dataclass(eq=False)
class CountingMeasure:
    """Equal-weight atoms on the boundary with their arc parameters."""

    atoms: np.ndarray
    params: np.ndarray
    spec: SetSpec

    def __post_init__(self):
        self.atoms = np.asarray(self.atoms, dtype=complex).ravel()
        self.params = np.asarray(self.params, dtype=float).ravel()
        if self.atoms.size != self.params.size or self.atoms.size == 0:
            raise ValueError("atoms and params must match and be nonempty")

    @property
    def n(self) -> int:
        return self.atoms.size


def counting_measure(spec: SetSpec, points) -> CountingMeasure:
    """Normalized counting measure of a node row (atoms must lie on the boundary)."""
    pts = np.asarray(points, dtype=complex).ravel()
    return CountingMeasure(pts, spec.param_of(pts), spec)


def mu_subarc(model: EquilibriumModel, z1, z2) -> float:
    """Equilibrium mass of the subarc between two boundary points.

    On closed curves the shorter of the two subarcs is used.
    """
    t1 = model.spec.param_of(z1)
    t2 = model.spec.param_of(z2)
    c1, c2 = float(model.cdf_param(t1)), float(model.cdf_param(t2))
    mass = abs(c2 - c1)
    if model.closed:
        mass = min(mass, 1.0 - mass)
    return mass


def kolmogorov_distance(nu: CountingMeasure, model: EquilibriumModel) -> float:
    """Sup distance between the node CDF and the equilibrium CDF in parameter.

    Exact at the atom jump points.  Closed curves report the max over
    8 rotated cut points, removing cut-placement artifacts.
    """
    if model.closed:
        return max(
            _ks_at_cut(nu.params, model, k / _CLOSED_CUTS) for k in range(_CLOSED_CUTS)
        )
    return _ks_at_cut(nu.params, model, 0.0)


def _ks_at_cut(params: np.ndarray, model: EquilibriumModel, cut: float) -> float:
    t = np.sort(np.mod(params - cut, 1.0)) if cut else np.sort(params)
    n = t.size
    if model.method == "empirical":
        ref = np.mod(model.ref_params - cut, 1.0) if cut else model.ref_params
        ref = np.sort(ref)
        grid = np.union1d(t, ref)
        f_nodes = np.searchsorted(t, grid, side="right") / n
        f_ref = np.searchsorted(ref, grid, side="right") / ref.size
        return float(np.max(np.abs(f_nodes - f_ref)))
    if model.method == "uniform_circle":
        f = t  # rotation-invariant CDF
    else:
        f = model.cdf_param(t)
    k = np.arange(1, n + 1)
    return float(np.max(np.maximum(f - (k - 1) / n, k / n - f)))


def capacity_estimate(points) -> float:
    """Geometric mean of the last point's distances to all earlier points.

    For greedy max-distance-product sequences this converges to the
    logarithmic capacity of the set.  Computed as a mean of logs.
    """
    pts = np.asarray(points, dtype=complex).ravel()
    if pts.size < 2:
        raise ValueError("need at least 2 points")
    d = np.abs(pts[-1] - pts[:-1])
    if np.any(d == 0.0):
        raise ValueError("coincident points")
    return float(np.exp(np.mean(np.log(d))))


def spacing_statistic(row, model: EquilibriumModel, n: int) -> float:
    """n times the smallest equilibrium mass between parameter-adjacent nodes.

    Stays bounded below (in n) exactly when neighboring nodes never crowd
    closer than ~1/n in equilibrium mass.
    """
    pts = np.asarray(row, dtype=complex).ravel()
    if model.closed:
        raise ValueError("spacing statistic is defined on open arcs")
    if pts.size < 2:
        raise ValueError("need at least 2 nodes")
    if _has_duplicates(pts):
        raise ValueError("duplicate nodes")
    t = np.sort(model.spec.param_of(pts))
    masses = np.diff(model.cdf_param(t))
    return float(n * masses.min())


def holder_statistic(model: EquilibriumModel, mesh: BoundaryMesh,
                     max_pair_separation: int = 1) -> float:
    """Max ratio of subarc equilibrium mass to the square root of the chord.

    Pairs are sampled at small index separations (nearest neighbors by
    default), probing the local mass modulus; wide pairs are dominated by
    global mass growth and are available via ``max_pair_separation``.
    """
    if model.closed:
        raise ValueError("statistic is defined on open arcs")
    pts = mesh.points
    cdf = model.cdf_param(mesh.params)
    if max_pair_separation is None:
        max_pair_separation = len(mesh) - 1
    best = 0.0
    for sep in range(1, min(max_pair_separation, len(mesh) - 1) + 1):
        mass = np.abs(cdf[sep:] - cdf[:-sep])
        chord = np.abs(pts[sep:] - pts[:-sep])
        ok = chord > 0.0
        if ok.any():
            best = max(best, float(np.max(mass[ok] / np.sqrt(chord[ok]))))
    return best


def _has_duplicates(pts: np.ndarray) -> bool:
    order = np.lexsort((pts.imag, pts.real))
    z = pts[order]
    return bool(np.any(z[1:] == z[:-1]))
