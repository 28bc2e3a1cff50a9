import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deloneanderson import pointset
from deloneanderson.pointset import (
    Pattern,
    Window,
    annulus_example,
    lattice,
    materialize,
    pattern_frequency,
    perturbed_lattice,
    verify_delone,
)


class TestMaterialize:
    def test_unit_lattice_window(self):
        pts = materialize(lattice(1, 1), Window((0,), 10))
        assert pts.ravel().tolist() == [-4, -3, -2, -1, 0, 1, 2, 3, 4]

    def test_open_cube_excludes_boundary(self):
        pts = materialize(lattice(2, 2), Window((0, 0), 4))
        assert pts.tolist() == [[0.0, 0.0]]

    def test_annulus_inner_region_is_q2(self):
        spec = annulus_example(1, 2, 2, 4, 1)
        pts = materialize(spec, Window((0,), 4))
        assert pts.ravel().tolist() == [0.0]

    def test_annulus_shells_match_pure_lattices(self):
        # windows within one shell agree exactly with the carrying lattice
        spec = annulus_example(1, 2, 2.0, 4.0, 1)
        # A_2 = [-8, 8] \ (-2, 2) carries the q1 = 1 lattice
        in_shell = materialize(spec, Window((5.0,), 4.0))
        expect = materialize(lattice(1, 1), Window((5.0,), 4.0))
        assert np.array_equal(in_shell, expect)

    def test_annulus_boundary_assigned_to_lower_k(self):
        spec = annulus_example(1, 2, 2.0, 4.0, 1)
        pts = materialize(spec, Window((2.0,), 1.0)).ravel()
        # x = 2 sits on the boundary of Lambda_4, so it belongs to A_1 (q2)
        assert pts.tolist() == [2.0]

    def test_annulus_rejects_equal_spacings(self):
        with pytest.raises(ValueError):
            annulus_example(2, 2, 2.0, 4.0, 1)

    def test_annulus_rejects_alpha_at_most_one(self):
        with pytest.raises(ValueError):
            annulus_example(1, 2, 1.0, 4.0, 1)

    def test_translation_consistency(self):
        spec = lattice(1.5, 2)
        big = materialize(spec, Window((0, 0), 20))
        small_w = Window((2.25, -1.0), 6)
        small = materialize(spec, small_w)
        expected = big[small_w.contains(big)]
        assert np.array_equal(small, expected)

    @given(
        seed=st.integers(0, 10_000),
        shift=st.floats(0.0, 0.45),
        center=st.floats(-5, 5),
    )
    @settings(max_examples=25, deadline=None)
    def test_perturbed_windows_agree(self, seed, shift, center):
        spec = perturbed_lattice(1.0, shift, seed, 1)
        a = materialize(spec, Window((0.0,), 12))
        b = materialize(spec, Window((center,), 12))
        pa = {round(float(x), 12) for x in a.ravel()}
        pb = {round(float(x), 12) for x in b.ravel()}
        shared_lo = max(-6, center - 6)
        shared_hi = min(6, center + 6)
        for x in pa:
            if shared_lo + 1e-9 < x < shared_hi - 1e-9:
                assert x in pb

    def test_perturbed_zero_shift_is_lattice(self):
        spec = perturbed_lattice(2.0, 0.0, 7, 1)
        assert np.array_equal(
            materialize(spec, Window((0,), 17)), materialize(lattice(2, 1), Window((0,), 17))
        )


class TestVerifyDelone:
    def test_unit_lattice_certificate(self):
        cert = verify_delone(lattice(1, 1), Window((0,), 30), 0.25)
        assert cert.r_hat == 1.0
        assert cert.R_hat == 2.0

    def test_scaled_lattice_certificate(self):
        cert = verify_delone(lattice(2, 1), Window((0,), 40), 0.4)
        assert cert.r_hat == 2.0
        assert cert.R_hat == 4.0

    def test_counting_bound_example(self):
        pts = materialize(lattice(1, 1), Window((0,), 10))
        assert 10 / 2 <= len(pts) <= 10 / 1

    def test_zero_perturbation_matches_lattice(self):
        ca = verify_delone(perturbed_lattice(1.0, 0.0, 3, 1), Window((0,), 30), 0.25)
        cb = verify_delone(lattice(1.0, 1), Window((0,), 30), 0.25)
        assert (ca.r_hat, ca.R_hat) == (cb.r_hat, cb.R_hat)

    def test_perturbed_certificate_brackets(self):
        q, s = 1.0, 0.2
        cert = verify_delone(perturbed_lattice(q, s, 11, 1), Window((0,), 40), 0.1)
        assert cert.r_hat >= q - 2 * s - 1e-9
        assert cert.R_hat <= 2 * q + 2 * s + 1e-9

    def test_probe_spacing_guard(self):
        with pytest.raises(ValueError):
            verify_delone(lattice(1, 1), Window((0,), 30), 0.5)

    def test_window_too_small(self):
        with pytest.raises(ValueError):
            verify_delone(lattice(1, 1), Window((0,), 1.5), 0.1)

    def test_2d_lattice(self):
        cert = verify_delone(lattice(1, 2), Window((0, 0), 12), 0.25)
        assert cert.r_hat == 1.0
        assert cert.R_hat == 2.0

    def test_discreteness_on_probe_grid(self):
        spec = perturbed_lattice(1.0, 0.3, 5, 1)
        w = Window((0,), 20)
        cert = verify_delone(spec, w, 0.05)
        pts = materialize(spec, w)
        rng = np.random.default_rng(0)
        for x in rng.uniform(-8, 8, 200):
            inside = np.abs(pts.ravel() - x) < cert.r_hat / 2
            assert inside.sum() <= 1
            near = np.abs(pts.ravel() - x) < cert.R_hat / 2
            assert near.sum() >= 1


class TestPatternFrequency:
    def setup_method(self):
        self.Q = Pattern(points=np.zeros((1, 1)), support_side=1.0)

    def test_unit_lattice(self):
        f = pattern_frequency(lattice(1, 1), self.Q, (0,), 10, 1e-3)
        assert f == pytest.approx(0.9)

    def test_spacing_two(self):
        f = pattern_frequency(lattice(2, 1), self.Q, (0,), 100, 1e-3)
        assert f == pytest.approx(0.5, abs=1.5 / 100)

    def test_density_limit(self):
        for q in (1.0, 2.0, 4.0):
            f = pattern_frequency(lattice(q, 1), self.Q, (0,), 400, 1e-3)
            assert f == pytest.approx(1 / q, abs=2 * q / 400)

    def test_two_point_pattern(self):
        Q = Pattern(points=np.array([[0.0], [1.0]]), support_side=2.5)
        f = pattern_frequency(lattice(1, 1), Q, (0,), 50, 1e-3)
        assert f == pytest.approx(1.0, abs=0.1)

    def test_pattern_absent(self):
        Q = Pattern(points=np.array([[0.0], [0.5]]), support_side=2.0)
        assert pattern_frequency(lattice(1, 1), Q, (0,), 30, 1e-3) == 0.0

    def test_annulus_even_odd(self):
        spec = annulus_example(1, 2, 2.0, 4.0, 1)
        f_even = pattern_frequency(spec, self.Q, (0,), 16.0, 1e-3)
        f_odd = pattern_frequency(spec, self.Q, (0,), 256.0, 1e-3)
        assert f_even > 0.75  # trending to q1^-1 = 1
        assert abs(f_odd - 0.5) < 0.05  # trending to q2^-1 = 0.5

    def test_empty_pattern_rejected(self):
        with pytest.raises(ValueError):
            Pattern(points=np.empty((0, 1)), support_side=1.0)

    def test_window_must_exceed_support(self):
        with pytest.raises(ValueError):
            pattern_frequency(lattice(1, 1), self.Q, (0,), 0.5, 1e-3)

    def test_match_tol_guard(self):
        with pytest.raises(ValueError):
            pattern_frequency(lattice(1, 1), self.Q, (0,), 10, 0.9)


def test_canonical_index_roundtrip():
    spec = perturbed_lattice(1.0, 0.3, 9, 2)
    pts = materialize(spec, Window((0, 0), 8))
    idx = pointset.canonical_index(spec, pts)
    assert np.all(np.abs(pts - idx.astype(float)) <= 0.3 + 1e-12)
    assert len(np.unique(idx, axis=0)) == len(idx)


def test_export_points_csv(tmp_path):
    pts = materialize(lattice(1, 2), Window((0, 0), 4))
    path = tmp_path / "pts.csv"
    pointset.export_points_csv(path, pts)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "x1,x2"
    assert len(lines) == len(pts) + 1
