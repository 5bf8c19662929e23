"""
Reference shape functions.

Interval elements number their nodes left, right, then midpoint (P2).
Triangle elements reuse the Lagrange basis of the geometry maps.
"""
import numpy as np

from hmflow.exceptions import UnsupportedDegreeError
from hmflow.mesh.geometry import lagrange_basis, lagrange_gradients


def interval_basis(degree: int, s: np.ndarray) -> np.ndarray:
    s = np.atleast_1d(np.asarray(s, dtype=float))
    if degree == 1:
        return np.stack([1.0 - s, s], axis=1)
    if degree == 2:
        return np.stack([(1.0 - s) * (1.0 - 2.0 * s), s * (2.0 * s - 1.0), 4.0 * s * (1.0 - s)], axis=1)
    raise UnsupportedDegreeError(f"Polynomial degree {degree} is not supported")


def interval_gradients(degree: int, s: np.ndarray) -> np.ndarray:
    """
    Derivatives d/ds on the reference interval (0, 1), shape (nq, nb).
    """
    s = np.atleast_1d(np.asarray(s, dtype=float))
    if degree == 1:
        return np.tile(np.array([-1.0, 1.0]), (s.shape[0], 1))
    if degree == 2:
        return np.stack([4.0 * s - 3.0, 4.0 * s - 1.0, 4.0 - 8.0 * s], axis=1)
    raise UnsupportedDegreeError(f"Polynomial degree {degree} is not supported")


def triangle_basis(degree: int, points: np.ndarray) -> np.ndarray:
    return lagrange_basis(degree, points)


def triangle_gradients(degree: int, points: np.ndarray) -> np.ndarray:
    return lagrange_gradients(degree, points)


def local_dof_count(dimension: int, degree: int) -> int:
    if degree not in (1, 2):
        raise UnsupportedDegreeError(f"Polynomial degree {degree} is not supported")
    if dimension == 1:
        return degree + 1
    return 3 * degree
