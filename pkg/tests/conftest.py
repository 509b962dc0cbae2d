"""Shared fixtures and independent oracles for the test suite.

Oracles here stay deliberately dumb (dense sampling, direct products,
explicit pair scans) so they remain independent of the library code paths
they check.
"""
import numpy as np
import pytest

from leja_lab import SetSpec, build_mesh, exact_green, make_scheme


@pytest.fixture(scope="session")
def segment():
    return SetSpec("segment")


@pytest.fixture(scope="session")
def circle():
    return SetSpec("circle")


@pytest.fixture(scope="session")
def segment_green(segment):
    return exact_green(segment)


@pytest.fixture(scope="session")
def leja128(segment):
    """Greedy scheme serving rows up to n = 128 (quadratic candidate mesh)."""
    return make_scheme(segment, "leja", 128)


@pytest.fixture(scope="session")
def leja256(segment):
    return make_scheme(segment, "leja", 256)


@pytest.fixture(scope="session")
def discrete_green_256(segment):
    from leja_lab import discrete_green

    return discrete_green(segment, 256)


# ---------------------------------------------------------------------------
# oracles

def brute_ellipse_distance(a, b, p, q, m=2_000_001):
    """Min distance to the ellipse by dense parameter sampling."""
    t = np.linspace(0.0, 2.0 * np.pi, m)
    return float(np.min(np.hypot(a * np.cos(t) - p, b * np.sin(t) - q)))


def dense_lebesgue_max(row, spec, m=100_000):
    """Sup of the Lebesgue function on a dense clustered boundary mesh."""
    from leja_lab import lebesgue_function

    mesh = build_mesh(spec, m, "endpoint_clustered" if not spec.closed else "uniform")
    return float(lebesgue_function(row, mesh.points).max())


def direct_basis_abs(row, z):
    """|l_k(z)| by raw distance products (overflow-prone; small rows only)."""
    row = np.asarray(row, dtype=complex)
    n = len(row)
    out = np.empty(n)
    for k in range(n):
        others = np.delete(row, k)
        out[k] = abs(np.prod(z - others) / np.prod(row[k] - others))
    return out


def brute_qc_constant(points):
    """Arc-metric constant by the literal triple scan over index pairs."""
    pts = np.asarray(points, dtype=complex)
    m = len(pts)
    best = 0.0
    for i in range(m):
        for j in range(i + 1, m):
            chord = abs(pts[i] - pts[j])
            if chord == 0.0:
                continue
            sub = pts[i : j + 1]
            diam = float(np.abs(sub[:, None] - sub[None, :]).max())
            best = max(best, diam / chord)
    return best


def hausdorff_polyline(pts_a, pts_b):
    """Hausdorff distance between two closed polylines (point-to-segment)."""

    def one_sided(p, q):
        a = q[None, :]
        d = (np.roll(q, -1) - q)[None, :]
        t = np.clip(((p[:, None] - a) * d.conj()).real / np.abs(d) ** 2, 0.0, 1.0)
        foot = a + t * d
        return float(np.min(np.abs(p[:, None] - foot), axis=1).max())

    return max(one_sided(pts_a, pts_b), one_sided(pts_b, pts_a))
