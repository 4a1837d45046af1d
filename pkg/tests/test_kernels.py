"""Both kernel backends must agree and satisfy the eigensolver contract."""

import numpy as np
import pytest

from mixedforms import _kernels
from mixedforms._kernels import _fallback

BACKENDS = [("python", _fallback)]
if _kernels.IMPLEMENTATION == "cython":
    from mixedforms._kernels import _core

    BACKENDS.append(("cython", _core))


@pytest.mark.parametrize("name,impl", BACKENDS)
def test_jacobi_small_known(name, impl):
    w, v = impl.jacobi_eigh(np.diag([3.0, 1.0]))
    assert sorted(w) == [1.0, 3.0]
    np.testing.assert_allclose(np.abs(v), np.eye(2), atol=1e-12)


@pytest.mark.parametrize("name,impl", BACKENDS)
def test_jacobi_random_reconstruction(name, impl):
    rng = np.random.default_rng(7)
    for _ in range(25):
        n = int(rng.integers(1, 20))
        g = rng.standard_normal((n, n))
        s = (g + g.T) / 2
        w, v = impl.jacobi_eigh(s)
        np.testing.assert_allclose((v * w) @ v.T, s, atol=1e-11 * max(1, np.linalg.norm(s)))
        np.testing.assert_allclose(v.T @ v, np.eye(n), atol=1e-12)


@pytest.mark.parametrize("name,impl", BACKENDS)
def test_jacobi_zero_matrix(name, impl):
    w, v = impl.jacobi_eigh(np.zeros((3, 3)))
    assert np.all(w == 0)
    np.testing.assert_array_equal(v, np.eye(3))


@pytest.mark.parametrize("name,impl", BACKENDS)
def test_jacobi_does_not_mutate_input(name, impl):
    s = np.array([[2.0, 1.0], [1.0, -1.0]])
    before = s.copy()
    impl.jacobi_eigh(s)
    np.testing.assert_array_equal(s, before)


@pytest.mark.parametrize("name,impl", BACKENDS)
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_det_batch_matches_numpy(name, impl, n):
    rng = np.random.default_rng(n)
    mats = rng.integers(-9, 10, size=(200, n, n)).astype(np.int64)
    got = impl.det_batch_int64(mats)
    expected = np.rint(np.linalg.det(mats.astype(np.float64))).astype(np.int64)
    np.testing.assert_array_equal(got, expected)


@pytest.mark.parametrize("name,impl", BACKENDS)
def test_det_batch_rejects_large_n(name, impl):
    with pytest.raises(ValueError):
        impl.det_batch_int64(np.zeros((1, 5, 5), dtype=np.int64))


def test_backends_agree_on_eigenvalues():
    if len(BACKENDS) < 2:
        pytest.skip("compiled backend not built")
    rng = np.random.default_rng(11)
    for _ in range(10):
        n = int(rng.integers(2, 16))
        g = rng.standard_normal((n, n))
        s = (g + g.T) / 2
        w_py, _ = BACKENDS[0][1].jacobi_eigh(s)
        w_cy, _ = BACKENDS[1][1].jacobi_eigh(s)
        np.testing.assert_allclose(sorted(w_py), sorted(w_cy), atol=1e-12)
