import math

import numpy as np
import pytest

from leja_lab import (
    Affine,
    BoundaryMesh,
    SetSpec,
    build_mesh,
    chebyshev_nodes,
    equispaced_nodes,
    leja_generate,
    make_scheme,
    random_nodes,
    user_scheme,
)
from leja_lab.nodes import leja_select


class TestLejaGenerate:
    def test_segment_first_three(self, segment):
        mesh = build_mesh(segment, 4096, "endpoint_clustered")
        pts = leja_generate(mesh, 3, start=1.0 + 0j)
        assert pts[0] == 1.0
        assert pts[1] == -1.0
        assert abs(pts[2]) <= 1e-3  # mesh point nearest the middle

    def test_segment_fourth_point(self, segment):
        # |z(z^2-1)| peaks at +-1/sqrt(3); the mesh decides which side wins
        mesh = build_mesh(segment, 4096, "endpoint_clustered")
        pts = leja_generate(mesh, 4, start=1.0 + 0j)
        assert abs(abs(pts[3]) - 1.0 / math.sqrt(3.0)) <= 2e-3

    def test_circle_antipode(self, circle):
        mesh = build_mesh(circle, 4096)
        pts = leja_generate(mesh, 2, start=1.0 + 0j)
        assert abs(pts[0] - 1.0) <= 1e-12
        assert abs(pts[1] + 1.0) <= 1e-12

    def test_exact_tie_breaks_to_lowest_index(self, segment):
        # hand-built symmetric mesh: |z -/+ 1| ties exactly at step 2
        xs = np.linspace(-1.0, 1.0, 9)
        mesh = BoundaryMesh(xs.astype(complex), (xs + 1) / 2, False, segment)
        idx = leja_select(mesh, 2, start=4)
        assert list(idx) == [4, 0]

    def test_prefix_property(self, segment):
        mesh = build_mesh(segment, 4096, "endpoint_clustered")
        a = leja_select(mesh, 20)
        b = leja_select(mesh, 21)
        assert np.array_equal(a, b[:20])

    def test_deterministic(self, segment):
        mesh = build_mesh(segment, 4096, "endpoint_clustered")
        assert np.array_equal(leja_select(mesh, 32), leja_select(mesh, 32))

    def test_scale_equivariance(self, segment):
        aff = Affine(scale=2.0, rot_rad=math.pi / 3, shift=0.7 - 0.3j)
        moved = SetSpec("segment", affine=aff)
        m1 = build_mesh(segment, 4096, "endpoint_clustered")
        m2 = build_mesh(moved, 4096, "endpoint_clustered")
        assert np.array_equal(leja_select(m1, 40), leja_select(m2, 40))

    def test_pairwise_distinct_with_margin(self, leja128):
        pts = leja128.row(128)
        d = np.abs(pts[:, None] - pts[None, :])
        np.fill_diagonal(d, np.inf)
        min_mesh_gap = np.abs(np.diff(leja128.mesh.points)).min()
        assert d.min() > min_mesh_gap / 2.0

    def test_rejects_small_mesh(self, segment):
        mesh = build_mesh(segment, 16, "uniform")
        with pytest.raises(ValueError):
            leja_generate(mesh, 8)

    def test_rejects_bad_start(self, segment):
        mesh = build_mesh(segment, 64, "uniform")
        with pytest.raises(ValueError):
            leja_generate(mesh, 4, start=999)
        with pytest.raises(ValueError):
            leja_generate(mesh, 4, start="elsewhere")


class TestReferenceFamilies:
    def test_chebyshev_small(self):
        assert np.allclose(chebyshev_nodes(1), [0.0], atol=1e-16)
        assert np.allclose(chebyshev_nodes(2), [math.sqrt(2) / 2, -math.sqrt(2) / 2])
        assert np.allclose(chebyshev_nodes(3), [math.sqrt(3) / 2, 0.0, -math.sqrt(3) / 2])

    def test_chebyshev_descending(self):
        x = chebyshev_nodes(9).real
        assert np.all(np.diff(x) < 0)

    def test_equispaced(self):
        assert np.allclose(equispaced_nodes(3), [-1, 0, 1])
        assert np.allclose(equispaced_nodes(2), [-1, 1])
        assert np.allclose(equispaced_nodes(1), [0])

    def test_segment_only(self, circle):
        with pytest.raises(ValueError):
            chebyshev_nodes(4, circle)
        with pytest.raises(ValueError):
            equispaced_nodes(4, circle)

    def test_random_deterministic(self):
        a = random_nodes(3, seed=7)
        b = random_nodes(3, seed=7)
        assert np.array_equal(a, b)
        assert len(np.unique(a)) == 3

    def test_random_requires_seed(self):
        with pytest.raises(ValueError):
            random_nodes(3, seed=None)


class TestScheme:
    def test_rows_are_prefixes(self, leja128):
        r16 = leja128.row(16)
        r64 = leja128.row(64)
        assert np.array_equal(r16, r64[:16])

    def test_row_params_match_points(self, leja128):
        n = 32
        pts = leja128.row(n)
        t = leja128.row_params(n)
        assert np.allclose(leja128.spec.point_at(t), pts)

    def test_missing_row_rejected(self, leja128):
        with pytest.raises(ValueError):
            leja128.row(129)

    def test_capacity_objective_stabilizes(self, leja256):
        # the achieved geometric-mean distance settles as rows deepen
        from leja_lab import capacity_estimate

        caps = [capacity_estimate(leja256.row(k)) for k in (64, 128, 256)]
        for a, b in zip(caps, caps[1:]):
            assert abs(a - b) / a < 0.05

    def test_random_scheme_rows(self, segment):
        s = make_scheme(segment, "random", 12, seed=5)
        a = s.row(8)
        b = s.row(8)
        assert np.array_equal(a, b)
        assert len(np.unique(a)) == 8

    def test_chebyshev_scheme(self, segment):
        s = make_scheme(segment, "chebyshev", 8)
        assert np.allclose(s.row(3), chebyshev_nodes(3))

    def test_user_scheme(self, segment):
        s = user_scheme(segment, {2: [-1 + 0j, 1 + 0j]})
        assert np.array_equal(s.row(2), np.array([-1 + 0j, 1 + 0j]))
        with pytest.raises(ValueError):
            s.row(3)

    def test_non_segment_reference_rejected(self, circle):
        with pytest.raises(ValueError):
            make_scheme(circle, "chebyshev", 4)
