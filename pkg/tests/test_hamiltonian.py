import numpy as np
import pytest

from deloneanderson import hamiltonian
from deloneanderson.colouring import (
    ColouredWindow,
    constant_colouring,
    sample_colouring,
    uniform_dist,
)
from deloneanderson.hamiltonian import (
    assemble,
    box_potential,
    bump_potential,
    free_eigenvalues,
    grid_axes,
    overlap_bound,
    potential_on_grid,
)
from deloneanderson.pointset import Window, lattice


def free_cw(d, side):
    return constant_colouring(lattice(1.0, d), Window((0.0,) * d, side), 0.0)


def coupled_cw(points, couplings, window_side, d=1):
    spec = lattice(1.0, d)
    return ColouredWindow(
        spec=spec,
        window=Window((0.0,) * d, window_side),
        dist=uniform_dist(2.0),
        master_seed=0,
        sample_index=0,
        points=np.atleast_2d(np.asarray(points, dtype=float)),
        couplings=np.asarray(couplings, dtype=float),
    )


class TestPotentialOnGrid:
    def test_empty_sum(self):
        cw = coupled_cw(np.empty((0, 1)), [], 12.0)
        axes = grid_axes(Window((0.0,), 4.0), 0.5)
        V = potential_on_grid(cw, box_potential(1.0, 0.6), axes)
        assert np.all(V == 0)

    def test_single_impurity_box(self):
        cw = coupled_cw([[0.0]], [0.7], 12.0)
        u = box_potential(1.0, 0.6)
        axes = grid_axes(Window((0.0,), 4.0), 0.5)
        V = potential_on_grid(cw, u, axes)
        x = axes[0]
        expect = np.where(np.abs(x) < 0.6, 0.7, 0.0)
        assert np.allclose(V, expect)

    def test_overlapping_boxes_add(self):
        cw = coupled_cw([[-0.25], [0.25]], [0.5, 0.5], 12.0)
        u = box_potential(1.0, 0.6)
        axes = grid_axes(Window((0.0,), 4.0), 0.5)
        V = potential_on_grid(cw, u, axes)
        x = axes[0]
        overlap = np.abs(x) < 0.35
        assert np.allclose(V[overlap], 1.0)

    def test_margin_enforced(self):
        cw = coupled_cw([[0.0]], [1.0], 4.4)
        axes = grid_axes(Window((0.0,), 4.0), 0.5)
        with pytest.raises(ValueError, match="margin"):
            potential_on_grid(cw, box_potential(1.0, 0.6), axes)

    def test_nonnegative(self):
        cw = sample_colouring(lattice(1.0, 2), Window((0, 0), 10), uniform_dist(1.0), 3, 0)
        axes = grid_axes(Window((0.0, 0.0), 6.0), 0.5)
        V = potential_on_grid(cw, bump_potential(2.0, 0.8), axes)
        assert np.all(V >= 0)


class TestBumpProfile:
    def test_bounds_recorded(self):
        u = bump_potential(2.0, 0.5)
        assert u.eps_u == 0.5 and u.delta_u == 1.0 and u.u_minus == 1.0

    def test_profile_bracket(self):
        u = bump_potential(2.0, 0.5)
        t = np.linspace(-0.6, 0.6, 241)
        prof = u.profile1d(t) * u.u_plus
        assert np.all(prof <= u.u_plus + 1e-15)
        inner = np.abs(t) < 0.25
        assert np.all(prof[inner] >= u.u_minus)
        assert np.all(prof[np.abs(t) >= 0.5] == 0)

    def test_c1_smoothness(self):
        u = bump_potential(1.0, 0.5)
        t = np.linspace(-0.55, 0.55, 2201)
        dt = t[1] - t[0]
        vals = u.profile1d(t)
        deriv = np.gradient(vals, t)
        # derivative continuous: increments bounded by |second derivative| * dt
        assert np.max(np.abs(np.diff(deriv))) < 120 * dt


class TestAssemble:
    def test_free_dirichlet_matrix(self):
        M = assemble(free_cw(1, 10), box_potential(1.0, 1.5), 4.0, (0,), 1.0, "dirichlet")
        expect = 2 * np.eye(4) - np.eye(4, k=1) - np.eye(4, k=-1)
        assert np.array_equal(M.to_dense(), expect)
        evs = np.linalg.eigvalsh(M.to_dense())
        assert np.allclose(evs, [0.3819660112501051, 1.381966011250105, 2.618033988749895, 3.618033988749895], atol=1e-9)

    def test_free_neumann_kernel(self):
        M = assemble(free_cw(1, 10), box_potential(1.0, 1.5), 4.0, (0,), 1.0, "neumann")
        evs = np.linalg.eigvalsh(M.to_dense())
        assert abs(evs[0]) < 1e-12

    @pytest.mark.parametrize("d,m,h,bc", [(1, 8, 0.5, "dirichlet"), (1, 8, 0.5, "neumann"),
                                          (2, 5, 1.0, "dirichlet"), (2, 5, 1.0, "neumann"),
                                          (3, 3, 1.0, "dirichlet"), (3, 3, 1.0, "neumann")])
    def test_free_spectra_closed_form(self, d, m, h, bc):
        L = m * h
        M = assemble(free_cw(d, L + 8), box_potential(1.0, 2 * h), L, (0,) * d, h, bc)
        evs = np.linalg.eigvalsh(M.to_dense())
        assert np.allclose(evs, free_eigenvalues(d, m, h, bc), atol=1e-12)

    def test_dirichlet_minus_neumann(self):
        cw = sample_colouring(lattice(1.0, 2), Window((0, 0), 12), uniform_dist(1.0), 5, 0)
        u = box_potential(1.0, 0.75)
        MD = assemble(cw, u, 6.0, (0, 0), 0.5, "dirichlet")
        MN = assemble(cw, u, 6.0, (0, 0), 0.5, "neumann")
        diff = MD.to_dense() - MN.to_dense()
        off = diff - np.diag(np.diag(diff))
        assert np.all(off == 0)
        assert np.all(np.diag(diff) >= 0)
        # interior nodes untouched
        interior = np.abs(np.diag(diff)) == 0
        assert interior.sum() == (12 - 2) ** 2

    def test_symmetry_exact(self):
        cw = sample_colouring(lattice(1.0, 1), Window((0,), 20), uniform_dist(1.0), 5, 0)
        M = assemble(cw, box_potential(1.0, 0.5), 16.0, (0,), 0.25, "dirichlet")
        A = M.to_dense()
        assert np.array_equal(A, A.T)

    def test_row_sparsity(self):
        cw = sample_colouring(lattice(1.0, 2), Window((0, 0), 12), uniform_dist(1.0), 5, 0)
        M = assemble(cw, box_potential(1.0, 0.75), 6.0, (0, 0), 0.5, "neumann")
        A = M.to_dense()
        assert np.max(np.count_nonzero(A, axis=0)) <= 2 * 2 + 1

    def test_potential_bound(self):
        cw = sample_colouring(lattice(1.0, 1), Window((0,), 40), uniform_dist(1.0), 5, 0)
        u = box_potential(2.0, 0.5)
        M = assemble(cw, u, 32.0, (0,), 0.25, "dirichlet")
        assert M.v_inf_bound == 1.0 * overlap_bound(u, 1.0, 1)
        assert M.potential.max() <= M.v_inf_bound + 1e-12
        assert M.potential.min() >= 0

    def test_grid_divisibility(self):
        with pytest.raises(ValueError, match="multiple"):
            assemble(free_cw(1, 10), box_potential(1.0, 1.5), 4.3, (0,), 1.0, "dirichlet")

    def test_resolution_guard(self):
        with pytest.raises(ValueError, match="resolve"):
            assemble(free_cw(1, 10), box_potential(1.0, 0.25), 4.0, (0,), 0.25, "dirichlet")

    def test_bad_bc(self):
        with pytest.raises(ValueError, match="bc"):
            assemble(free_cw(1, 10), box_potential(1.0, 1.5), 4.0, (0,), 1.0, "robin")

    def test_coo_export(self, tmp_path):
        M = assemble(free_cw(1, 10), box_potential(1.0, 1.5), 4.0, (0,), 1.0, "dirichlet")
        path = tmp_path / "m.coo"
        M.export_coo(path)
        lines = path.read_text().strip().splitlines()
        assert len(lines) == 4 + 3  # diagonal + subdiagonal entries

    def test_band_matches_dense(self):
        cw = sample_colouring(lattice(1.0, 2), Window((0, 0), 12), uniform_dist(1.0), 8, 1)
        M = assemble(cw, box_potential(1.0, 0.75), 6.0, (0, 0), 0.5, "neumann")
        band = M.band()
        A = M.to_dense()
        n = M.n
        for t in range(band.shape[1]):
            assert np.array_equal(band[: n - t, t], np.diagonal(A, -t))
