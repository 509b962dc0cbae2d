"""Exterior field machinery for plane compact sets.

Closed forms for the segment (disk-exterior map and its inverse) and the
circle; a discrete logarithmic-potential model with equal charges for
everything else.  Level curves of the field, and distances from boundary
points to a level curve, feed the separation audits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import SetSpec, build_mesh

_BOUNDARY_EXCLUSION = 1e-12  # exact models reject points this close to the set


def joukowski(w):
    """(w + 1/w) / 2; maps the unit-disk exterior onto the segment exterior."""
    w = np.asarray(w, dtype=complex)
    if np.any(w == 0):
        raise ValueError("map undefined at w = 0")
    return (w + 1.0 / w) / 2.0


def inverse_joukowski(z):
    """w = z + sqrt(z^2 - 1) with the branch giving |w| > 1.

    Rejects points within 1e-14 of the segment [-1, 1], where the exterior
    inverse is not defined.
    """
    z = np.asarray(z, dtype=complex)
    dist = np.hypot(np.maximum(np.abs(z.real) - 1.0, 0.0), z.imag)
    if np.any(dist <= 1e-14):
        raise ValueError("point lies on the segment [-1, 1]; exterior inverse undefined")
    return _inverse_joukowski_unchecked(z)


def _inverse_joukowski_unchecked(z):
    # factored radicand loses less precision near the endpoints than z*z - 1;
    # the overall sign of the root is absorbed by the branch pick below
    s = np.sqrt((z - 1.0) * (z + 1.0))
    w1 = z + s
    w2 = z - s
    # the two roots multiply to 1; pick the one outside the unit circle
    return np.where(np.abs(w1) >= np.abs(w2), w1, w2)


@dataclass(eq=False)
class GreenModel:
    """Evaluator for the exterior equilibrium field of a compact set.

    ``method`` is one of exact_segment, exact_circle, discrete.  Discrete
    models carry charge points and a capacity estimate; both are embedded on
    serialization so runs reproduce exactly.  Immutable after construction
    (the level-curve cache is a memo, not state).
    """

    method: str
    spec: SetSpec
    charges: np.ndarray | None = None
    capacity_estimate: float | None = None
    _curve_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.method not in ("exact_segment", "exact_circle", "discrete"):
            raise ValueError(f"unknown Green model method {self.method!r}")
        if self.method == "exact_segment" and self.spec.kind != "segment":
            raise ValueError("exact_segment model requires a segment spec")
        if self.method == "exact_circle" and self.spec.kind != "circle":
            raise ValueError("exact_circle model requires a circle spec")
        if self.method == "discrete":
            self.charges = np.asarray(self.charges, dtype=complex).ravel()
            if self.charges.size < 16:
                raise ValueError("discrete model needs at least 16 charge points")
            if not (self.capacity_estimate and self.capacity_estimate > 0):
                raise ValueError("discrete model needs a positive capacity estimate")

    @property
    def capacity(self) -> float:
        if self.method == "exact_segment":
            return self.spec.affine.scale / 2.0
        if self.method == "exact_circle":
            return self.spec.affine.scale * self.spec.radius
        return float(self.capacity_estimate)


@dataclass(eq=False)
class LevelCurve:
    """Closed polyline tracing one level of the exterior field."""

    delta: float
    points: np.ndarray
    closed: bool
    tolerance: float

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=complex).ravel()


def exact_green(spec: SetSpec) -> GreenModel:
    """Closed-form model for segment or circle specs."""
    if spec.kind == "segment":
        return GreenModel("exact_segment", spec)
    if spec.kind == "circle":
        return GreenModel("exact_circle", spec)
    raise ValueError(f"no closed-form field for kind {spec.kind!r}; use discrete_green")


def discrete_green(spec: SetSpec, n_charges: int = 256,
                   candidates: int | None = None) -> GreenModel:
    """Discrete-potential model: equal charges at greedy boundary nodes.

    The greedy counting measure approximates the equilibrium measure, so
    equal charges give a quadrature of the equilibrium potential; capacity
    comes from the same node sequence.
    """
    from .nodes import default_candidates, leja_generate
    from .potential import capacity_estimate

    if candidates is None:
        candidates = default_candidates(n_charges)
    clustering = "uniform" if spec.closed else "endpoint_clustered"
    mesh = build_mesh(spec, candidates, clustering)
    charges = leja_generate(mesh, n_charges)
    cap = capacity_estimate(charges)
    return GreenModel("discrete", spec, charges=charges, capacity_estimate=cap)


def green_eval(model: GreenModel, z):
    """Field value at z (scalar or array); nonnegative wherever defined.

    Exact models reject points within 1e-12 (base coordinates) of the set;
    the discrete model is defined everywhere and clamped below at 0.
    """
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    if model.method == "exact_segment":
        w = model.spec.affine.pullback(z)
        dist = np.hypot(np.maximum(np.abs(w.real) - 1.0, 0.0), w.imag)
        if np.any(dist <= _BOUNDARY_EXCLUSION):
            raise ValueError("point on or inside the set; field undefined")
        g = np.log(np.abs(_inverse_joukowski_unchecked(w)))
    elif model.method == "exact_circle":
        r_eff = model.spec.radius * model.spec.affine.scale
        d = np.abs(z - model.spec.affine.shift)
        if np.any(d - r_eff <= _BOUNDARY_EXCLUSION * model.spec.affine.scale):
            raise ValueError("point on or inside the circle; field undefined")
        g = np.log(d / r_eff)
    else:
        with np.errstate(divide="ignore"):
            g = np.mean(np.log(np.abs(z[:, None] - model.charges[None, :])), axis=1)
        g = g - math.log(model.capacity_estimate)
        g = np.maximum(g, 0.0)
    return float(g[0]) if scalar else g


def level_curve(model: GreenModel, delta: float, resolution: int = 512) -> LevelCurve:
    """Closed curve where the field equals log(1 + delta).

    Exact models trace the curve analytically at ``resolution`` points.  The
    discrete model extracts the contour from a bounding-box grid
    (resolution x resolution cells) by cell-edge root bracketing with linear
    interpolation; the reported tolerance is the max field residual over the
    polyline.
    """
    if not (0.0 < delta <= 10.0):
        raise ValueError(f"delta must lie in (0, 10], got {delta}")
    if resolution < 64:
        raise ValueError("resolution must be >= 64")
    key = (float(delta), int(resolution))
    cached = model._curve_cache.get(key)
    if cached is not None:
        return cached

    level = math.log1p(delta)
    if model.method == "exact_segment":
        theta = 2.0 * math.pi * np.arange(resolution) / resolution
        w = (1.0 + delta) * np.exp(1j * theta)
        pts = model.spec.affine.apply(joukowski(w))
        base = model.spec.affine.pullback(pts)
        resid = np.abs(np.log(np.abs(_inverse_joukowski_unchecked(base))) - level)
        curve = LevelCurve(delta, pts, True, float(resid.max()))
    elif model.method == "exact_circle":
        r_eff = model.spec.radius * model.spec.affine.scale * (1.0 + delta)
        theta = 2.0 * math.pi * np.arange(resolution) / resolution
        pts = model.spec.affine.shift + r_eff * np.exp(1j * theta)
        resid = np.abs(green_eval(model, pts) - level)
        curve = LevelCurve(delta, pts, True, float(resid.max()))
    else:
        pts = _grid_contour(model, level, delta, resolution)
        resid = np.abs(green_eval(model, pts) - level)
        curve = LevelCurve(delta, pts, True, float(resid.max()))
    model._curve_cache[key] = curve
    return curve


def rho(model: GreenModel, delta: float, z, resolution: int = 512):
    """Distance from boundary point(s) z to the delta level curve.

    The segment model solves the point-to-ellipse projection exactly; other
    models measure the minimum distance to the level-curve polyline, which
    converges from above as the resolution grows.
    """
    if not (delta > 0.0):
        raise ValueError("delta must be positive")
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    if model.method == "exact_segment":
        w = model.spec.affine.pullback(z)
        if np.any(np.hypot(np.maximum(np.abs(w.real) - 1.0, 0.0), w.imag) > 1e-8):
            raise ValueError("point not on the segment")
        x = np.clip(w.real, -1.0, 1.0)
        out = model.spec.affine.scale * _segment_level_distance(x, delta)
    else:
        model.spec.param_of(z)  # rejects points off the boundary
        curve = level_curve(model, delta, resolution)
        out = np.min(np.abs(z[:, None] - curve.points[None, :]), axis=1)
    return float(out[0]) if scalar else out


def rho_many(model: GreenModel, delta: float, z, resolution: int = 512):
    return rho(model, delta, np.asarray(z, dtype=complex), resolution)


def rho_formula_segment(x, n: int):
    """sqrt(1 - |x|)/n + 1/n^2 for x in [-1, 1]."""
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0):
        raise ValueError("x must lie in [-1, 1]")
    if n < 1:
        raise ValueError("n must be a positive integer")
    out = np.sqrt(1.0 - np.abs(x)) / n + 1.0 / (n * n)
    return float(out) if out.ndim == 0 else out


def _level_ellipse_axes(delta: float):
    r = 1.0 + delta
    a = 0.5 * (r + 1.0 / r)
    b = 0.5 * (r - 1.0 / r)
    return a, b


def _segment_level_distance(x, delta: float):
    """Exact distance from x in [-1, 1] to the level ellipse (vectorized).

    On-axis projection: the nearest ellipse point has cos(t) = a*x/(a^2-b^2)
    while that stays inside [0, 1]; beyond the threshold the vertex is
    nearest.  The level ellipses here are confocal with a^2 - b^2 = 1.
    """
    a, b = _level_ellipse_axes(delta)
    f = a * a - b * b
    ax = np.abs(np.asarray(x, dtype=float))
    u = np.minimum(a * ax / f, 1.0)
    lateral = np.hypot(a * u - ax, b * np.sqrt(np.maximum(1.0 - u * u, 0.0)))
    vertex = a - ax
    return np.where(a * ax / f < 1.0, lateral, vertex)


def point_to_ellipse_distance(a: float, b: float, p: float, q: float,
                              tol: float = 1e-13) -> float:
    """Distance from (p, q) to the ellipse x^2/a^2 + y^2/b^2 = 1 (a >= b > 0).

    Scan plus safeguarded bisection of the stationarity equation; the two
    on-axis regimes are handled in closed form, where the projection root
    formula is exact and the bisection bracket would degenerate.
    """
    if not (a >= b > 0.0):
        raise ValueError("need a >= b > 0")
    p, q = abs(float(p)), abs(float(q))
    if a == b:
        return abs(math.hypot(p, q) - a)
    if q <= 1e-14 * b:
        return float(_segment_like_axis_distance(a, b, p))
    if p <= 1e-14 * a:
        return abs(q - b)

    def dist(t):
        return math.hypot(a * math.cos(t) - p, b * math.sin(t) - q)

    def stat(t):
        c, s = math.cos(t), math.sin(t)
        return (a * a - b * b) * c * s - a * p * s + b * q * c

    ts = np.linspace(0.0, math.pi / 2.0, 257)
    vals = np.hypot(a * np.cos(ts) - p, b * np.sin(ts) - q)
    i = int(np.argmin(vals))
    lo = ts[max(i - 1, 0)]
    hi = ts[min(i + 1, len(ts) - 1)]
    flo, fhi = stat(lo), stat(hi)
    if flo == 0.0:
        return dist(lo)
    if fhi == 0.0:
        return dist(hi)
    if (flo > 0) != (fhi > 0):
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            fm = stat(mid)
            if fm == 0.0:
                return dist(mid)
            if (fm > 0) == (flo > 0):
                lo, flo = mid, fm
            else:
                hi, fhi = mid, fm
        return dist(0.5 * (lo + hi))
    # no sign change (grazing stationarity): golden-section on the distance
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    c = hi - phi * (hi - lo)
    d = lo + phi * (hi - lo)
    fc, fd = dist(c), dist(d)
    while hi - lo > tol:
        if fc > fd:
            lo, c, fc = c, d, fd
            d = lo + phi * (hi - lo)
            fd = dist(d)
        else:
            hi, d, fd = d, c, fc
            c = hi - phi * (hi - lo)
            fc = dist(c)
    return min(fc, fd)


def _segment_like_axis_distance(a: float, b: float, p: float) -> float:
    f = a * a - b * b
    u = a * p / f
    if u >= 1.0:
        return abs(a - p)
    return math.hypot(a * u - p, b * math.sqrt(max(1.0 - u * u, 0.0)))


# ---------------------------------------------------------------------------
# grid contour extraction (discrete models)

def _grid_contour(model: GreenModel, level: float, delta: float,
                  resolution: int) -> np.ndarray:
    spec = model.spec
    boundary = build_mesh(spec, 256, "uniform").points
    diam = spec.diameter()
    pad = 3.0 * (1.0 + delta) * diam
    xmin, xmax = boundary.real.min() - pad, boundary.real.max() + pad
    ymin, ymax = boundary.imag.min() - pad, boundary.imag.max() + pad
    xs = np.linspace(xmin, xmax, resolution)
    ys = np.linspace(ymin, ymax, resolution)

    field = np.empty((resolution, resolution))
    block = max(1, (1 << 21) // (resolution * max(model.charges.size, 1)))
    for lo in range(0, resolution, block):
        hi = min(lo + block, resolution)
        grid = xs[None, None, :] + 1j * ys[lo:hi, None, None]
        with np.errstate(divide="ignore"):
            g = np.mean(
                np.log(np.abs(grid - model.charges[None, :, None])), axis=1
            )
        field[lo:hi] = np.maximum(g - math.log(model.capacity_estimate), 0.0)

    s = field - level
    s[s == 0.0] = 1e-300  # zero samples count as outside; avoids degeneracy
    if not (s.min() < 0.0 < s.max()):
        need = 2.0 * model.capacity * math.e * (1.0 + delta) + diam
        raise RuntimeError(
            f"level {level:.6g} not bracketed by the grid; "
            f"enlarge the box to at least half-width {need:.3g}"
        )

    crossings: dict = {}
    segments: list = []
    ny, nx = s.shape

    def edge_point(kind, iy, ix):
        key = (kind, iy, ix)
        pt = crossings.get(key)
        if pt is None:
            if kind == "h":
                v0, v1 = s[iy, ix], s[iy, ix + 1]
                t = v0 / (v0 - v1)
                pt = complex(xs[ix] + t * (xs[ix + 1] - xs[ix]), ys[iy])
            else:
                v0, v1 = s[iy, ix], s[iy + 1, ix]
                t = v0 / (v0 - v1)
                pt = complex(xs[ix], ys[iy] + t * (ys[iy + 1] - ys[iy]))
            crossings[key] = pt
        return key

    # case table: corner order (bottom-left, bottom-right, top-right, top-left);
    # entries list pairs of cell edges (b=bottom, r=right, t=top, l=left)
    table = {
        1: [("l", "b")], 2: [("b", "r")], 3: [("l", "r")], 4: [("r", "t")],
        6: [("b", "t")], 7: [("l", "t")], 8: [("t", "l")],
        9: [("b", "t")], 11: [("r", "t")], 12: [("l", "r")],
        13: [("b", "r")], 14: [("l", "b")],
    }
    for iy in range(ny - 1):
        pos = s[iy] > 0.0
        pos_up = s[iy + 1] > 0.0
        for ix in range(nx - 1):
            code = (
                (1 if pos[ix] else 0)
                | (2 if pos[ix + 1] else 0)
                | (4 if pos_up[ix + 1] else 0)
                | (8 if pos_up[ix] else 0)
            )
            if code in (0, 15):
                continue
            if code in (5, 10):
                center = complex(
                    0.5 * (xs[ix] + xs[ix + 1]), 0.5 * (ys[iy] + ys[iy + 1])
                )
                center_pos = green_eval(model, center) > level
                if code == 5:
                    pairs = [("l", "b"), ("r", "t")] if center_pos else [("l", "t"), ("b", "r")]
                else:
                    pairs = [("b", "r"), ("t", "l")] if center_pos else [("l", "b"), ("r", "t")]
            else:
                pairs = table[code]
            names = {
                "b": ("h", iy, ix), "t": ("h", iy + 1, ix),
                "l": ("v", iy, ix), "r": ("v", iy, ix + 1),
            }
            for ea, eb in pairs:
                ka = edge_point(*names[ea])
                kb = edge_point(*names[eb])
                segments.append((ka, kb))

    loops = _stitch_loops(segments, crossings)
    if not loops:
        raise RuntimeError("contour stitching produced no closed loop; refine the grid")
    center = boundary.mean()
    best = None
    for loop in loops:
        pts = np.asarray(loop)
        if abs(_winding_number(pts, center)) < 0.5:
            continue
        area = abs(_signed_area(pts))
        if best is None or area > best[0]:
            best = (area, pts)
    if best is None:
        raise RuntimeError("no extracted loop encloses the set; refine the grid")
    pts = best[1]
    if _signed_area(pts) < 0.0:
        pts = pts[::-1]  # normalize to counterclockwise
    return pts


def _stitch_loops(segments, crossings):
    adj: dict = {}
    for si, (ka, kb) in enumerate(segments):
        adj.setdefault(ka, []).append(si)
        adj.setdefault(kb, []).append(si)
    used = [False] * len(segments)
    loops = []
    for start in range(len(segments)):
        if used[start]:
            continue
        used[start] = True
        ka, kb = segments[start]
        chain = [ka, kb]
        closed = False
        while True:
            tail = chain[-1]
            nxt = next((si for si in adj[tail] if not used[si]), None)
            if nxt is None:
                break
            used[nxt] = True
            a, b = segments[nxt]
            chain.append(b if a == tail else a)
            if chain[-1] == chain[0]:
                closed = True
                break
        if closed:
            loops.append([crossings[k] for k in chain[:-1]])
    return loops


def _winding_number(pts: np.ndarray, z0: complex) -> float:
    w = pts - z0
    ang = np.angle(np.roll(w, -1) / w)
    return float(ang.sum() / (2.0 * math.pi))


def _signed_area(pts: np.ndarray) -> float:
    x, y = pts.real, pts.imag
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


# ---------------------------------------------------------------------------
# serialization

def green_to_json(model: GreenModel) -> dict:
    from .geometry import spec_to_json

    out = {"method": model.method, "set": spec_to_json(model.spec)}
    if model.method == "discrete":
        out["charges"] = [[c.real, c.imag] for c in model.charges]
        out["capacity"] = model.capacity_estimate
    return out


def green_from_json(obj) -> GreenModel:
    from .geometry import spec_from_json

    spec = spec_from_json(obj["set"])
    if obj["method"] == "discrete":
        charges = np.asarray([complex(p[0], p[1]) for p in obj["charges"]])
        return GreenModel("discrete", spec, charges=charges,
                          capacity_estimate=float(obj["capacity"]))
    return GreenModel(obj["method"], spec)
