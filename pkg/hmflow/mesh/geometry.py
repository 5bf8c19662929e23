"""
Lagrange basis on the reference triangle and the geometry maps built from it.

Reference coordinates are barycentric triples (l0, l1, l2) with
xi = l1 and eta = l2. Quadratic nodes 3, 4, 5 sit on the local edges
(0,1), (1,2) and (2,0). The same basis is used for the finite element
spaces, which makes degree-2 spaces isoparametric.
"""
from typing import Tuple

import numpy as np

from hmflow.exceptions import (
    DegenerateElementError,
    InvalidArgumentError,
    UnsupportedDegreeError,
)
from hmflow.mesh.disk import DiskMesh

# d(l0, l1, l2) / d(xi, eta)
BARYCENTRIC_GRADIENTS = np.array([[-1.0, -1.0], [1.0, 0.0], [0.0, 1.0]])


def check_barycentric(points: np.ndarray) -> np.ndarray:
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if points.shape[-1] != 3:
        raise InvalidArgumentError("Reference points need three barycentric coordinates")
    if np.any(points < -1e-12) or np.any(np.abs(points.sum(axis=1) - 1.0) > 1e-12):
        raise InvalidArgumentError("Reference point outside of the reference triangle")
    return points


def lagrange_basis(degree: int, points: np.ndarray) -> np.ndarray:
    """
    Values of the nodal Lagrange basis of given degree.

    :param degree: 1 or 2
    :type degree: int
    :param points: barycentric coordinates, shape (nq, 3)
    :type points: np.ndarray
    :return: basis values, shape (nq, 3) or (nq, 6)
    :rtype: np.ndarray
    """
    lam = np.atleast_2d(points)
    if degree == 1:
        return lam.copy()
    if degree == 2:
        l0, l1, l2 = lam[:, 0], lam[:, 1], lam[:, 2]
        return np.stack(
            [
                l0 * (2 * l0 - 1),
                l1 * (2 * l1 - 1),
                l2 * (2 * l2 - 1),
                4 * l0 * l1,
                4 * l1 * l2,
                4 * l2 * l0,
            ],
            axis=1,
        )
    raise UnsupportedDegreeError(f"Polynomial degree {degree} is not supported")


def lagrange_gradients(degree: int, points: np.ndarray) -> np.ndarray:
    """
    Reference gradients (d/dxi, d/deta) of the nodal Lagrange basis.

    :param degree: 1 or 2
    :type degree: int
    :param points: barycentric coordinates, shape (nq, 3)
    :type points: np.ndarray
    :return: gradients, shape (nq, nb, 2)
    :rtype: np.ndarray
    """
    lam = np.atleast_2d(points)
    nq = lam.shape[0]
    d = BARYCENTRIC_GRADIENTS
    if degree == 1:
        return np.broadcast_to(d, (nq, 3, 2)).copy()
    if degree == 2:
        grads = np.empty((nq, 6, 2))
        for i in range(3):
            grads[:, i] = (4 * lam[:, i] - 1)[:, None] * d[i]
        for k, (i, j) in enumerate([(0, 1), (1, 2), (2, 0)]):
            grads[:, 3 + k] = 4 * (lam[:, j, None] * d[i] + lam[:, i, None] * d[j])
        return grads
    raise UnsupportedDegreeError(f"Polynomial degree {degree} is not supported")


def geometry_nodes(mesh: DiskMesh, degree: int) -> np.ndarray:
    if degree == 1:
        return mesh.vertices[mesh.triangles]
    return mesh.triangle_nodes()


def map_reference_points(
    mesh: DiskMesh, points: np.ndarray, degree: int
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Maps reference points into every triangle of the mesh.

    Degree 1 uses the affine map through the vertices, degree 2 the quadratic
    map through vertices and edge midpoints (curved on isoparametric meshes,
    straight elsewhere where it coincides with the affine map).

    :param mesh: disk mesh
    :type mesh: DiskMesh
    :param points: barycentric coordinates, shape (nq, 3)
    :type points: np.ndarray
    :param degree: geometry degree
    :type degree: int
    :raises DegenerateElementError: if a Jacobian determinant is not positive
    :return: physical points (nt, nq, 2), Jacobians (nt, nq, 2, 2), determinants (nt, nq)
    :rtype: Tuple[np.ndarray, np.ndarray, np.ndarray]
    """
    nodes = geometry_nodes(mesh, degree)
    values = lagrange_basis(degree, points)
    grads = lagrange_gradients(degree, points)
    physical = np.einsum("qa,tai->tqi", values, nodes)
    jacobians = np.einsum("qaj,tai->tqij", grads, nodes)
    dets = (
        jacobians[..., 0, 0] * jacobians[..., 1, 1]
        - jacobians[..., 0, 1] * jacobians[..., 1, 0]
    )
    bad = np.flatnonzero((dets <= 0).any(axis=1))
    if bad.size:
        raise DegenerateElementError(
            f"Non-positive Jacobian determinant on triangle {int(bad[0])}"
        )
    return physical, jacobians, dets


def inverse_jacobians(jacobians: np.ndarray, dets: np.ndarray) -> np.ndarray:
    inv = np.empty_like(jacobians)
    inv[..., 0, 0] = jacobians[..., 1, 1]
    inv[..., 0, 1] = -jacobians[..., 0, 1]
    inv[..., 1, 0] = -jacobians[..., 1, 0]
    inv[..., 1, 1] = jacobians[..., 0, 0]
    return inv / dets[..., None, None]


def geometry_map(
    mesh: DiskMesh, tri: int, ref_point: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Evaluates the geometry map of a single triangle.

    Triangles owning a curved boundary edge use the quadratic map,
    all others the affine one.

    :param mesh: disk mesh
    :type mesh: DiskMesh
    :param tri: triangle index
    :type tri: int
    :param ref_point: barycentric coordinates of the reference point
    :type ref_point: np.ndarray
    :raises InvalidArgumentError: for unknown triangle or point outside the reference triangle
    :raises DegenerateElementError: if the Jacobian determinant is not positive
    :return: physical point (2,) and Jacobian (2, 2)
    :rtype: Tuple[np.ndarray, np.ndarray]
    """
    if not 0 <= tri < mesh.triangles.shape[0]:
        raise InvalidArgumentError(f"Triangle {tri} does not exist")
    lam = check_barycentric(ref_point)
    degree = 2 if mesh.curved_triangles[tri] else 1
    nodes = geometry_nodes(mesh, degree)[tri]
    point = lagrange_basis(degree, lam)[0] @ nodes
    jacobian = nodes.T @ lagrange_gradients(degree, lam)[0]
    det = jacobian[0, 0] * jacobian[1, 1] - jacobian[0, 1] * jacobian[1, 0]
    if det <= 0:
        raise DegenerateElementError(
            f"Non-positive Jacobian determinant on triangle {tri}"
        )
    return point, jacobian
