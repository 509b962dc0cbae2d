"""Plane compact sets: shape specs, boundary meshes, arc metric estimates.

Shapes are described by a small vocabulary (segment, circle, circular arc,
polyline arc, raw samples) plus an optional similarity map.  A boundary mesh
is an ordered discretization that carries the intrinsic parameter of every
point, so downstream code can move between positions and parameters without
re-projecting.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

KINDS = ("segment", "circle", "circular_arc", "polyline_arc", "samples")

# Pair budget for the arc-metric scan; above this the index set is strided.
_QC_MAX_POINTS = 512


@dataclass(frozen=True)
class Affine:
    """Similarity map z -> scale * exp(i*rot_rad) * z + shift.  No shear."""

    scale: float = 1.0
    rot_rad: float = 0.0
    shift: complex = 0j

    def __post_init__(self):
        if not (self.scale > 0.0) or not math.isfinite(self.scale):
            raise ValueError(f"affine scale must be positive, got {self.scale}")

    @property
    def factor(self) -> complex:
        return self.scale * complex(math.cos(self.rot_rad), math.sin(self.rot_rad))

    @property
    def is_identity(self) -> bool:
        return self.scale == 1.0 and self.rot_rad == 0.0 and self.shift == 0j

    def apply(self, z):
        return self.factor * np.asarray(z) + self.shift

    def pullback(self, z):
        return (np.asarray(z) - self.shift) / self.factor


@dataclass(frozen=True, eq=False)
class SetSpec:
    """Description of a compact set: base shape plus similarity map.

    Base shapes before the affine map:
      segment       the real interval [-1, 1]
      circle        circle of given radius, centered at 0
      circular_arc  arc of given radius at angles [-span/2, +span/2]
      polyline_arc  chain through the given vertices, arclength-parametrized
      samples       raw ordered boundary samples, chord-length-parametrized
    """

    kind: str
    radius: float = 1.0
    span_rad: float = 0.0
    vertices: np.ndarray | None = None
    affine: Affine = field(default_factory=Affine)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown set kind {self.kind!r}; expected one of {KINDS}")
        if self.kind in ("circle", "circular_arc"):
            if not (self.radius > 0.0) or not math.isfinite(self.radius):
                raise ValueError(f"radius must be positive, got {self.radius}")
        if self.kind == "circular_arc":
            if not (0.0 < self.span_rad < 2.0 * math.pi):
                raise ValueError(
                    "circular_arc span must lie in (0, 2*pi); use kind='circle' "
                    f"for a full circle (got span {self.span_rad})"
                )
        if self.kind in ("polyline_arc", "samples"):
            v = np.asarray(self.vertices, dtype=complex).ravel()
            if v.size < 2:
                raise ValueError(f"{self.kind} needs at least 2 vertices")
            if np.any(np.abs(np.diff(v)) == 0.0):
                raise ValueError("consecutive vertices must be distinct")
            if self.kind == "polyline_arc":
                if len(np.unique(v)) != v.size:
                    raise ValueError("polyline vertices must be pairwise distinct")
                if _polyline_self_intersects(v):
                    raise ValueError("polyline arc is self-intersecting")
            object.__setattr__(self, "vertices", v)

    # ------------------------------------------------------------------

    @property
    def closed(self) -> bool:
        return self.kind == "circle"

    def point_at(self, t):
        """Boundary point at intrinsic parameter t in [0, 1] (vectorized)."""
        t = np.asarray(t, dtype=float)
        if self.kind == "segment":
            base = (-1.0 + 2.0 * t).astype(complex)
        elif self.kind == "circle":
            ang = 2.0 * math.pi * t
            base = self.radius * (np.cos(ang) + 1j * np.sin(ang))
        elif self.kind == "circular_arc":
            ang = self.span_rad * (t - 0.5)
            base = self.radius * (np.cos(ang) + 1j * np.sin(ang))
        else:
            base = self._polyline_point(t)
        return self.affine.apply(base)

    def param_of(self, z, tol: float = 1e-8):
        """Intrinsic parameter of boundary point(s) z.

        Rejects points farther than ``tol`` (in base coordinates) from the
        set.  Vectorized; the inverse of :meth:`point_at` up to rounding.
        """
        w = self.affine.pullback(np.asarray(z, dtype=complex))
        scalar = w.ndim == 0
        w = np.atleast_1d(w)
        if self.kind == "segment":
            dist = np.hypot(np.maximum(np.abs(w.real) - 1.0, 0.0), w.imag)
            t = (np.clip(w.real, -1.0, 1.0) + 1.0) / 2.0
        elif self.kind == "circle":
            dist = np.abs(np.abs(w) - self.radius)
            t = np.mod(np.angle(w) / (2.0 * math.pi), 1.0)
        elif self.kind == "circular_arc":
            half = self.span_rad / 2.0
            ang = np.angle(w)
            off = np.maximum(np.abs(ang) - half, 0.0)
            # chordal penalty for angles beyond the arc span
            dist = np.abs(np.abs(w) - self.radius) + 2.0 * self.radius * np.sin(
                np.minimum(off, math.pi) / 2.0
            )
            t = (np.clip(ang, -half, half) + half) / self.span_rad
        else:
            t, dist = self._polyline_param(w)
        if np.any(dist > tol):
            worst = float(np.max(dist))
            raise ValueError(
                f"point not on the {self.kind} boundary "
                f"(base-coordinate distance {worst:.3e} > tol {tol:.1e})"
            )
        return float(t[0]) if scalar else t

    def diameter(self) -> float:
        """Diameter, estimated from 256 boundary samples (exact for simple kinds)."""
        if self.kind == "segment":
            return 2.0 * self.affine.scale
        if self.kind == "circle":
            return 2.0 * self.radius * self.affine.scale
        pts = self.point_at(np.linspace(0.0, 1.0, 256))
        d = np.abs(pts[:, None] - pts[None, :])
        return float(d.max())

    # -- polyline internals --------------------------------------------

    def _cumlen(self):
        seg = np.abs(np.diff(self.vertices))
        cum = np.concatenate([[0.0], np.cumsum(seg)])
        return seg, cum

    def _polyline_point(self, t):
        seg, cum = self._cumlen()
        total = cum[-1]
        s = np.atleast_1d(t) * total
        idx = np.clip(np.searchsorted(cum, s, side="right") - 1, 0, len(seg) - 1)
        frac = (s - cum[idx]) / seg[idx]
        base = self.vertices[idx] + frac * (self.vertices[idx + 1] - self.vertices[idx])
        base[np.atleast_1d(t) <= 0.0] = self.vertices[0]
        base[np.atleast_1d(t) >= 1.0] = self.vertices[-1]
        return base if np.ndim(t) else base[0]

    def _polyline_param(self, w):
        seg, cum = self._cumlen()
        total = cum[-1]
        a = self.vertices[:-1][None, :]
        d = np.diff(self.vertices)[None, :]
        alpha = np.clip(((w[:, None] - a) * d.conj()).real / np.abs(d) ** 2, 0.0, 1.0)
        foot = a + alpha * d
        dist = np.abs(w[:, None] - foot)
        j = np.argmin(dist, axis=1)
        rows = np.arange(len(w))
        t = (cum[j] + alpha[rows, j] * seg[j]) / total
        return t, dist[rows, j]


@dataclass(eq=False)
class BoundaryMesh:
    """Ordered boundary discretization with matching intrinsic parameters."""

    points: np.ndarray
    params: np.ndarray
    closed: bool
    source: SetSpec

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=complex).ravel()
        self.params = np.asarray(self.params, dtype=float).ravel()
        if self.points.size != self.params.size or self.points.size < 2:
            raise ValueError("mesh needs matching points/params lists of length >= 2")
        if np.any(np.diff(self.params) <= 0.0):
            raise ValueError("mesh parameters must be strictly increasing")
        if np.any(np.abs(np.diff(self.points)) == 0.0):
            raise ValueError("consecutive mesh points must be distinct")

    def __len__(self) -> int:
        return self.points.size


def build_mesh(spec: SetSpec, m: int, clustering: str = "uniform") -> BoundaryMesh:
    """Mesh the boundary of ``spec`` with ``m`` points ordered by parameter.

    ``clustering='endpoint_clustered'`` uses a cosine-graded parameter on
    open arcs, so the spacing next to the arc endpoints scales like 1/m^2.
    Closed curves have no endpoints and always mesh uniformly.
    Deterministic: identical inputs give bit-identical meshes.
    """
    if m < 2:
        raise ValueError(f"mesh size must be >= 2, got {m}")
    if clustering not in ("uniform", "endpoint_clustered"):
        raise ValueError(f"unknown clustering {clustering!r}")
    if spec.closed:
        t = np.arange(m, dtype=float) / m
    else:
        s = np.linspace(0.0, 1.0, m)
        if clustering == "endpoint_clustered":
            t = np.sin(0.5 * math.pi * s) ** 2  # = (1 - cos(pi*s)) / 2
        else:
            t = s
    return BoundaryMesh(spec.point_at(t), t, spec.closed, spec)


def subarc(mesh: BoundaryMesh, i: int, j: int) -> BoundaryMesh:
    """Contiguous sub-mesh between indices i and j, order-normalized."""
    if mesh.closed:
        raise ValueError("subarc of a closed curve is ambiguous; cut it first")
    m = len(mesh)
    if not (0 <= i < m and 0 <= j < m):
        raise ValueError(f"indices ({i}, {j}) out of range for mesh of size {m}")
    if i == j:
        raise ValueError("subarc endpoints must differ")
    lo, hi = (i, j) if i < j else (j, i)
    return BoundaryMesh(
        mesh.points[lo : hi + 1], mesh.params[lo : hi + 1], False, mesh.source
    )


def qc_constant_estimate(mesh: BoundaryMesh) -> float:
    """Arc-metric constant: max over index pairs of subarc diameter / chord.

    A lower estimate of the true supremum; it converges from below under
    mesh refinement.  For meshes above the pair budget a strided index
    subsample (first and last index always included) keeps the scan at
    ~512^2 pairs while preserving the lower-bound property.
    """
    if mesh.closed:
        raise ValueError("arc metric constant is defined for open arcs")
    m = len(mesh)
    if m < 3:
        raise ValueError("need at least 3 mesh points")
    if m > _QC_MAX_POINTS:
        stride = -(-m // _QC_MAX_POINTS)  # ceil
        idx = np.arange(0, m, stride)
        if idx[-1] != m - 1:
            idx = np.append(idx, m - 1)
        pts = mesh.points[idx]
    else:
        pts = mesh.points
    s = len(pts)
    best = 0.0
    found = False
    # diam[i] holds diam(pts[i..j]) for the current j; updated in place.
    diam = np.zeros(s)
    for j in range(1, s):
        d = np.abs(pts[:j] - pts[j])
        suffix = np.maximum.accumulate(d[::-1])[::-1]  # max_{a in [i, j)} d[a]
        np.maximum(diam[:j], suffix, out=diam[:j])
        chord = d
        ok = chord > 0.0
        if ok.any():
            found = True
            ratio = float(np.max(diam[:j][ok] / chord[ok]))
            if ratio > best:
                best = ratio
    if not found:
        raise ValueError("all sampled point pairs are coincident")
    return best


# ---------------------------------------------------------------------------
# JSON interchange

def spec_to_json(spec: SetSpec) -> dict:
    out: dict = {"kind": spec.kind}
    if spec.kind == "circle":
        out["radius"] = spec.radius
    elif spec.kind == "circular_arc":
        out["radius"] = spec.radius
        out["span_rad"] = spec.span_rad
    elif spec.kind == "polyline_arc":
        out["vertices"] = [[v.real, v.imag] for v in spec.vertices]
    elif spec.kind == "samples":
        out["points"] = [[v.real, v.imag] for v in spec.vertices]
    if not spec.affine.is_identity:
        a = spec.affine
        out["affine"] = {
            "scale": a.scale,
            "rot_rad": a.rot_rad,
            "shift": [a.shift.real, a.shift.imag],
        }
    return out


def spec_from_json(obj) -> SetSpec:
    """Parse a set description from a JSON string or already-decoded dict."""
    if isinstance(obj, (str, bytes)):
        obj = json.loads(obj)
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError("set spec JSON must be an object with a 'kind' field")
    kind = obj["kind"]
    affine = Affine()
    if "affine" in obj:
        a = obj["affine"]
        shift = a.get("shift", [0.0, 0.0])
        affine = Affine(
            scale=float(a.get("scale", 1.0)),
            rot_rad=float(a.get("rot_rad", 0.0)),
            shift=complex(shift[0], shift[1]),
        )
    if kind == "segment":
        return SetSpec("segment", affine=affine)
    if kind == "circle":
        return SetSpec("circle", radius=float(obj.get("radius", 1.0)), affine=affine)
    if kind == "circular_arc":
        return SetSpec(
            "circular_arc",
            radius=float(obj.get("radius", 1.0)),
            span_rad=float(obj["span_rad"]),
            affine=affine,
        )
    if kind == "polyline_arc":
        verts = [complex(p[0], p[1]) for p in obj["vertices"]]
        return SetSpec("polyline_arc", vertices=np.asarray(verts), affine=affine)
    if kind == "samples":
        pts = [complex(p[0], p[1]) for p in obj["points"]]
        return SetSpec("samples", vertices=np.asarray(pts), affine=affine)
    raise ValueError(f"unknown set kind {kind!r}")


# ---------------------------------------------------------------------------

def _polyline_self_intersects(v: np.ndarray) -> bool:
    """Pairwise proper-intersection test on the chain's segments."""
    nseg = len(v) - 1
    for i in range(nseg):
        for j in range(i + 2, nseg):  # skip adjacent segments (shared vertex)
            if _segments_cross(v[i], v[i + 1], v[j], v[j + 1]):
                return True
    return False


def _segments_cross(a, b, c, d) -> bool:
    def orient(p, q, r):
        x = ((q - p).conjugate() * (r - p)).imag
        if x > 0:
            return 1
        if x < 0:
            return -1
        return 0

    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 != o2 and o3 != o4:
        return True
    # collinear overlap
    for p, q, r in ((a, b, c), (a, b, d), (c, d, a), (c, d, b)):
        if orient(p, q, r) == 0 and _on_segment(p, q, r):
            return True
    return False


def _on_segment(p, q, r) -> bool:
    return (
        min(p.real, q.real) <= r.real <= max(p.real, q.real)
        and min(p.imag, q.imag) <= r.imag <= max(p.imag, q.imag)
    )
