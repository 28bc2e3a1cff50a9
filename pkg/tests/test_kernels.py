import numpy as np
import pytest

from deloneanderson import kernels
from deloneanderson import _inertia_py


def random_band(rng, n, b):
    band = np.zeros((n, b + 1))
    band[:, 0] = rng.uniform(-2, 4, n)
    for t in range(1, b + 1):
        band[: n - t, t] = rng.uniform(-1, 1, n - t)
    return band


def band_to_dense(band):
    n = band.shape[0]
    A = np.diag(band[:, 0])
    for t in range(1, band.shape[1]):
        for j in range(n - t):
            A[j + t, j] = A[j, j + t] = band[j, t]
    return A


@pytest.mark.parametrize("n,b", [(12, 1), (30, 3), (64, 8), (50, 49)])
def test_negcount_matches_dense_inertia(n, b):
    rng = np.random.default_rng(n * 100 + b)
    for _ in range(20):
        band = random_band(rng, n, b)
        dense = band_to_dense(band)
        neg_expected = int(np.count_nonzero(np.linalg.eigvalsh(dense) < 0))
        neg, ok = kernels.ldlt_negcount(band.copy(), 1e-12)
        if ok:
            assert neg == neg_expected


def test_backends_bit_identical():
    if kernels.BACKEND != "cython":
        pytest.skip("compiled kernel not built")
    rng = np.random.default_rng(0)
    for trial in range(50):
        n = int(rng.integers(5, 80))
        b = int(rng.integers(1, min(n, 12)))
        band = random_band(rng, n, b)
        b_py = band.copy()
        b_cy = band.copy()
        res_py = _inertia_py.ldlt_negcount(b_py, 1e-13)
        res_cy = kernels.ldlt_negcount(b_cy, 1e-13, backend="cython")
        assert res_py == tuple(res_cy)
        # workspaces must agree bit for bit, not just to rounding
        assert np.array_equal(b_py, b_cy)


def test_small_pivot_reported():
    band = np.array([[1.0, 1.0], [1.0, 0.0]])  # second pivot becomes 0 exactly
    neg, ok = kernels.ldlt_negcount(band.copy(), 1e-12)
    assert not ok


def test_bad_backend_name():
    with pytest.raises(ValueError):
        kernels.ldlt_negcount(np.ones((2, 1)), 1e-12, backend="fortran")
