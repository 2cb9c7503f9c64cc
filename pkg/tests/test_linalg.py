import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from gfon.dynamics import ring_weights
from gfon.errors import InvalidParameterError
from gfon.linalg import jacobi_eigensym


def test_identity():
    vals, u = jacobi_eigensym(np.eye(4))
    np.testing.assert_array_equal(vals, np.ones(4))
    np.testing.assert_array_equal(u, np.eye(4))


def test_pair_weight_matrix_eigenvalues():
    w11, w22 = 0.7, 0.4
    w = np.array([[w11, 1 - w11], [1 - w22, w22]])
    # the 2x2 W is not symmetric; its eigenvalues equal those of the
    # similar symmetric matrix D^1/2 W D^-1/2 with D = diag(w21, w12)
    d = np.sqrt(np.array([w[1, 0], w[0, 1]]))
    sym = (d[:, None] * w) / d[None, :]
    vals, _ = jacobi_eigensym(0.5 * (sym + sym.T))
    np.testing.assert_allclose(vals, [1.0, w11 + w22 - 1], atol=1e-12)


@pytest.mark.parametrize("n", [3, 6, 11])
def test_ring_matches_circulant(n):
    vals, _ = jacobi_eigensym(ring_weights(n))
    ref = (1 + 2 * np.cos(2 * np.pi * np.arange(n) / n)) / 3
    np.testing.assert_allclose(np.sort(vals), np.sort(ref), atol=1e-12)
    assert vals[0] == pytest.approx(1.0, abs=1e-12)


def test_random_8x8_orthonormal(rng):
    m = rng.normal(size=(8, 8))
    m = m + m.T
    vals, u = jacobi_eigensym(m)
    np.testing.assert_allclose(u.T @ u, np.eye(8), atol=1e-9)
    assert np.max(np.abs(m - u @ np.diag(vals) @ u.T)) < 1e-9
    np.testing.assert_allclose(np.sort(vals), np.linalg.eigvalsh(m), atol=1e-10)


def test_ordering_by_magnitude_then_value():
    vals, _ = jacobi_eigensym(np.diag([0.5, -2.0, 2.0, -0.1]))
    np.testing.assert_array_equal(vals, [2.0, -2.0, 0.5, -0.1])


def test_rejects_asymmetric():
    with pytest.raises(InvalidParameterError):
        jacobi_eigensym(np.array([[1.0, 2.0], [0.0, 1.0]]))


@given(arrays(np.float64, (5, 5), elements=st.floats(-100, 100)))
def test_reconstruction_property(a):
    m = a + a.T
    vals, u = jacobi_eigensym(m)
    scale = max(1.0, np.abs(m).max())
    assert np.max(np.abs(m - u @ np.diag(vals) @ u.T)) < 1e-9 * scale
    np.testing.assert_allclose(u.T @ u, np.eye(5), atol=1e-9)
