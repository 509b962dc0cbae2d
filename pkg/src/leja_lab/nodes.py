"""Node families on compact-set boundaries, organized as triangular arrays.

The central construction is the greedy sequence where every new point
maximizes the product of distances to all previous points over the boundary
(accumulated as a log-sum to avoid overflow).  Reference families (Chebyshev,
equispaced, seeded random) serve as positive and negative controls.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import BoundaryMesh, SetSpec, build_mesh
from .kernels import leja_indices

SCHEME_KINDS = ("leja", "chebyshev", "equispaced", "random", "user")

# Candidate meshes scale quadratically with the target row size so the
# endpoint spacing (~1/m^2) resolves the finest node separations.  Capped to
# keep desk-scale runs in memory.
_CANDIDATE_CAP = 1 << 19


def default_candidates(n: int) -> int:
    return min(max(4096, 8 * n * n), _CANDIDATE_CAP)


def leja_select(mesh: BoundaryMesh, n: int, start="auto") -> np.ndarray:
    """Greedy selection indices into ``mesh.points``; row n is a prefix of row n+1.

    ``start`` is "auto" (mesh point farthest from the mesh centroid, lowest
    index on ties), an integer mesh index, or a complex point snapped to the
    nearest mesh point.  Exact score ties resolve to the lowest index.
    """
    m = len(mesh)
    if n < 1:
        raise ValueError("need n >= 1")
    if m < 4 * n:
        raise ValueError(f"mesh has {m} candidates; need at least 4*n = {4 * n}")
    if _distinct_count(mesh.points) < n:
        raise ValueError("mesh has fewer distinct candidates than requested nodes")
    if isinstance(start, str):
        if start != "auto":
            raise ValueError(f"unknown start rule {start!r}")
        centroid = mesh.points.mean()
        start_idx = int(np.argmax(np.abs(mesh.points - centroid)))
    elif isinstance(start, (int, np.integer)):
        start_idx = int(start)
        if not (0 <= start_idx < m):
            raise ValueError(f"start index {start_idx} out of range")
    else:
        start_idx = int(np.argmin(np.abs(mesh.points - complex(start))))
    return np.asarray(
        leja_indices(
            np.ascontiguousarray(mesh.points.real),
            np.ascontiguousarray(mesh.points.imag),
            n,
            start_idx,
        )
    )


def leja_generate(mesh: BoundaryMesh, n: int, start="auto",
                  tie_break: str = "lowest_index") -> np.ndarray:
    """First ``n`` greedy max-distance-product points on the mesh."""
    if tie_break != "lowest_index":
        raise ValueError(f"unsupported tie_break {tie_break!r}")
    return mesh.points[leja_select(mesh, n, start)]


def chebyshev_nodes(n: int, spec: SetSpec | None = None) -> np.ndarray:
    """cos((2k-1)pi/(2n)), k = 1..n, descending; segment sets only."""
    spec = spec or SetSpec("segment")
    if spec.kind != "segment":
        raise ValueError("Chebyshev nodes are defined on segment sets only")
    if n < 1:
        raise ValueError("need n >= 1")
    k = np.arange(1, n + 1)
    x = np.cos((2 * k - 1) * np.pi / (2 * n))
    return spec.affine.apply(x.astype(complex))


def equispaced_nodes(n: int, spec: SetSpec | None = None) -> np.ndarray:
    """Evenly spaced points -1 + 2(k-1)/(n-1); segment sets only."""
    spec = spec or SetSpec("segment")
    if spec.kind != "segment":
        raise ValueError("equispaced nodes are defined on segment sets only")
    if n < 1:
        raise ValueError("need n >= 1")
    x = np.zeros(1) if n == 1 else -1.0 + 2.0 * np.arange(n) / (n - 1)
    return spec.affine.apply(x.astype(complex))


def random_nodes(n: int, seed: int, spec: SetSpec | None = None) -> np.ndarray:
    """n distinct uniform-parameter draws on the boundary; seeded, deterministic."""
    spec = spec or SetSpec("segment")
    if seed is None:
        raise ValueError("random nodes require a seed")
    t = _random_params(n, seed)
    return spec.point_at(t)


def _random_params(n: int, seed, salt: int = 0) -> np.ndarray:
    rng = np.random.default_rng((int(seed), int(salt)))
    t = rng.random(n)
    while len(np.unique(t)) < n:  # exact collisions only; essentially never
        t = rng.random(n)
    return t


def _distinct_count(pts: np.ndarray) -> int:
    order = np.lexsort((pts.imag, pts.real))
    z = pts[order]
    return 1 + int(np.count_nonzero(z[1:] != z[:-1]))


@dataclass(eq=False)
class Scheme:
    """Triangular node array with row accessors.

    For the greedy kind the rows are prefixes of a single selection
    sequence; reference kinds regenerate each row deterministically.
    """

    kind: str
    spec: SetSpec
    n_max: int
    seed: int | None = None
    candidates: int = 0
    start: object = "auto"
    tie_break: str = "lowest_index"
    mesh: BoundaryMesh | None = field(default=None, repr=False)
    _leja_idx: np.ndarray | None = field(default=None, repr=False)
    _user_rows: dict | None = field(default=None, repr=False)

    def row(self, n: int) -> np.ndarray:
        """Nodes of row n (complex array of length n)."""
        self._check_row(n)
        if self.kind == "leja":
            return self.mesh.points[self._leja_idx[:n]]
        if self.kind == "chebyshev":
            return chebyshev_nodes(n, self.spec)
        if self.kind == "equispaced":
            return equispaced_nodes(n, self.spec)
        if self.kind == "random":
            return self.spec.point_at(_random_params(n, self.seed, salt=n))
        return np.asarray(self._user_rows[n], dtype=complex)

    def row_params(self, n: int) -> np.ndarray:
        """Intrinsic boundary parameters of row n."""
        self._check_row(n)
        if self.kind == "leja":
            return self.mesh.params[self._leja_idx[:n]]
        if self.kind == "random":
            return _random_params(n, self.seed, salt=n)
        return self.spec.param_of(self.row(n))

    def _check_row(self, n: int):
        if not (1 <= n <= self.n_max):
            raise ValueError(f"row {n} not available; scheme holds n <= {self.n_max}")
        if self.kind == "user" and (self._user_rows is None or n not in self._user_rows):
            raise ValueError(f"row {n} not present in user scheme")


def make_scheme(spec: SetSpec, kind: str, n_max: int, seed: int | None = None,
                candidates: int | None = None, start="auto") -> Scheme:
    """Build a scheme able to serve all rows n <= n_max."""
    if kind not in SCHEME_KINDS or kind == "user":
        raise ValueError(f"cannot build scheme of kind {kind!r}")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if kind in ("chebyshev", "equispaced") and spec.kind != "segment":
        raise ValueError(f"{kind} schemes are defined on segment sets only")
    if kind == "random" and seed is None:
        raise ValueError("random schemes require a seed")
    scheme = Scheme(kind=kind, spec=spec, n_max=n_max, seed=seed, start=start)
    if kind == "leja":
        m = candidates if candidates is not None else default_candidates(n_max)
        clustering = "uniform" if spec.closed else "endpoint_clustered"
        mesh = build_mesh(spec, m, clustering)
        scheme.candidates = m
        scheme.mesh = mesh
        scheme._leja_idx = leja_select(mesh, n_max, start)
    return scheme


def user_scheme(spec: SetSpec, rows: dict) -> Scheme:
    """Scheme wrapping externally supplied rows {n: points}."""
    rows = {int(n): np.asarray(p, dtype=complex) for n, p in rows.items()}
    for n, p in rows.items():
        if len(p) != n:
            raise ValueError(f"row {n} has {len(p)} points")
    return Scheme(
        kind="user",
        spec=spec,
        n_max=max(rows),
        _user_rows=rows,
    )
