"""
Sparse assembly of the bilinear forms of the flow problems.

Element matrices are computed for all cells at once from the quadrature
data of the space and scattered into CSR storage. Vector-valued spaces
get one copy of the scalar matrix per component.
"""
from typing import Callable, Union

import numpy as np
import scipy.sparse as sp

from hmflow.exceptions import AssemblyError, InvalidArgumentError
from hmflow.fem.space import FeSpace

Weight = Union[None, float, np.ndarray, Callable[[np.ndarray], np.ndarray]]


def scatter(space: FeSpace, local: np.ndarray) -> sp.csr_matrix:
    """
    Sums element matrices into a global scalar matrix.

    :param space: space providing the cell to dof map
    :type space: FeSpace
    :param local: element matrices, shape (ne, nb, nb), rows are test functions
    :type local: np.ndarray
    :return: canonical CSR matrix of size n_scalar
    :rtype: sp.csr_matrix
    """
    dofs = space.cell_dofs
    nb = dofs.shape[1]
    rows = np.repeat(dofs, nb, axis=1).ravel()
    cols = np.tile(dofs, (1, nb)).ravel()
    n = space.n_scalar
    matrix = sp.coo_matrix((local.ravel(), (rows, cols)), shape=(n, n)).tocsr()
    matrix.sum_duplicates()
    matrix.sort_indices()
    return matrix


def vectorize(space: FeSpace, matrix: sp.spmatrix) -> sp.csr_matrix:
    """
    Repeats a scalar matrix on the diagonal once per component of the space.
    """
    if space.value_dim == 1:
        return sp.csr_matrix(matrix)
    return sp.block_diag([matrix] * space.value_dim, format="csr")


def quadrature_weight(space: FeSpace, weight: Weight) -> np.ndarray:
    quad = space.quadrature()
    shape = quad.weights.shape
    if weight is None:
        return np.ones(shape)
    if callable(weight):
        weight = weight(quad.coordinates)
    values = np.broadcast_to(np.asarray(weight, dtype=float), shape)
    bad = np.flatnonzero(~np.isfinite(values).all(axis=1))
    if bad.size:
        raise AssemblyError(f"Weight is not finite on element {int(bad[0])}")
    return values


def assemble_weighted_mass(space: FeSpace, weight: Weight = None) -> sp.csr_matrix:
    """
    Assembles int weight * phi_i * phi_j.

    The weight is either constant, an array of values at the quadrature
    points of shape (ne, nq), or a callable receiving the quadrature point
    coordinates. State dependent weights, like |grad u|^2 of another
    function, are passed as arrays computed by
    ``FeFunction.values_at_quadrature`` and ``gradients_at_quadrature``.

    :param space: scalar or vector-valued space
    :type space: FeSpace
    :param weight: weight of the mass form, 1 when missing
    :type weight: Weight
    :raises AssemblyError: if the weight is not finite at a quadrature point
    :return: symmetric sparse matrix
    :rtype: sp.csr_matrix
    """
    quad = space.quadrature()
    scaled = quad.weights * quadrature_weight(space, weight)
    local = np.einsum("eq,qa,qb->eab", scaled, quad.values, quad.values)
    return vectorize(space, scatter(space.scalar_space(), local))


def assemble_mass(space: FeSpace) -> sp.csr_matrix:
    return assemble_weighted_mass(space)


def assemble_stiffness(space: FeSpace) -> sp.csr_matrix:
    """
    Assembles int grad phi_i . grad phi_j (plain derivative products on intervals).

    :param space: scalar or vector-valued space
    :type space: FeSpace
    :return: symmetric positive semidefinite matrix, constants in its kernel
    :rtype: sp.csr_matrix
    """
    quad = space.quadrature()
    local = np.einsum("eq,eqai,eqbi->eab", quad.weights, quad.gradients, quad.gradients)
    return vectorize(space, scatter(space.scalar_space(), local))


def assemble_convection_1d(space: FeSpace) -> sp.csr_matrix:
    """
    Assembles C_ij = int (1/r) phi_j' phi_i dr on an interval mesh.

    Gauss points are interior to the elements so 1/r is never evaluated at 0.

    :param space: scalar interval space
    :type space: FeSpace
    :raises InvalidArgumentError: for disk or vector-valued spaces
    :return: nonsymmetric sparse matrix
    :rtype: sp.csr_matrix
    """
    if not space.is_interval or space.value_dim != 1:
        raise InvalidArgumentError("Convection matrix is defined on scalar interval spaces")
    quad = space.quadrature()
    scaled = quad.weights / quad.coordinates
    local = np.einsum("eq,qa,eqb->eab", scaled, quad.values, quad.gradients[..., 0])
    return scatter(space, local)


def weighted_mass_from_gradient(space: FeSpace, gradients: np.ndarray) -> sp.csr_matrix:
    """
    Mass matrix weighted by |grad u|^2 summed over components.

    :param space: space of the result
    :type space: FeSpace
    :param gradients: (3, ne, nq, dim) or (ne, nq, dim) gradients at quadrature points
    :type gradients: np.ndarray
    :return: weighted mass matrix
    :rtype: sp.csr_matrix
    """
    squared = np.sum(gradients ** 2, axis=-1)
    if squared.ndim == 3:
        squared = squared.sum(axis=0)
    return assemble_weighted_mass(space, squared)
