import numpy as np
import pytest

from wsgd.errors import SingularMatrixError
from wsgd.linalg import LUFactor, lu_solve_core


def test_identity():
    b = np.arange(5.0)
    np.testing.assert_array_equal(lu_solve_core(np.eye(5), b), b)


def test_diagonally_dominant_residual():
    rng = np.random.default_rng(0)
    A = rng.standard_normal((50, 50)) + 60 * np.eye(50)
    B = rng.standard_normal((50, 7))
    X = LUFactor(A).solve(B)
    assert np.max(np.abs(A @ X - B)) <= 1e-10 * np.max(np.abs(B))


def test_tridiagonal_inverse_action():
    n = 9
    T = np.diag([-2.0] * n) + np.diag([1.0] * (n - 1), 1) + np.diag([1.0] * (n - 1), -1)
    x = np.linspace(-1, 1, n) ** 3
    np.testing.assert_allclose(LUFactor(T).solve(T @ x), x, atol=1e-13)


def test_pivoting_needed():
    A = np.array([[0.0, 1.0], [1.0, 0.0]])
    np.testing.assert_allclose(LUFactor(A).solve([2.0, 3.0]), [3.0, 2.0])


def test_singular():
    with pytest.raises(SingularMatrixError):
        LUFactor(np.array([[1.0, 2.0], [2.0, 4.0]]))
    with pytest.raises(SingularMatrixError):
        LUFactor(np.zeros((3, 3)))


def test_shape_errors():
    with pytest.raises(ValueError):
        LUFactor(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        LUFactor(np.eye(3)).solve(np.ones(4))
