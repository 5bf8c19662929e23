from typing import Optional

import numpy as np
import pydantic
from pydantic import ConfigDict

from hmflow.exceptions import InvalidArgumentError, UnsupportedDegreeError
from hmflow.fem.assembly import assemble_stiffness
from hmflow.fem.space import FeFunction, FeSpace
from hmflow.linalg import SparseMatrix


class LumpedMass(pydantic.BaseModel):
    """
    Node-diagonal mass with weights beta_z = int phi_z.
    Defines the lumped inner product (u, v)_h = sum_z beta_z <u(z), v(z)>.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    weights: np.ndarray

    @pydantic.field_validator("weights")
    @classmethod
    def positive_weights(cls, value: np.ndarray) -> np.ndarray:
        if np.any(value <= 0):
            raise InvalidArgumentError("Lumped mass weights have to be positive")
        return value

    @property
    def total(self) -> float:
        return float(self.weights.sum())

    def inner(self, u: np.ndarray, v: np.ndarray) -> float:
        """
        Lumped inner product of nodal arrays, (n,) or (n, 3).
        """
        products = u * v
        if products.ndim == 2:
            products = products.sum(axis=1)
        return float(self.weights @ products)

    def norm(self, u: np.ndarray) -> float:
        return float(np.sqrt(self.inner(u, u)))


def lumped_mass(space: FeSpace) -> LumpedMass:
    """
    Lumped mass of a linear space: a third of every adjacent triangle area
    (half of every adjacent interval length).

    :param space: degree 1 space
    :type space: FeSpace
    :raises UnsupportedDegreeError: for p != 1
    :return: lumped weights per scalar node
    :rtype: LumpedMass
    """
    if space.degree != 1:
        raise UnsupportedDegreeError("Lumped mass is defined for linear elements")
    scalar = space.scalar_space()
    cell_sizes = scalar.quadrature().weights.sum(axis=1)
    n_local = scalar.cell_dofs.shape[1]
    weights = np.bincount(
        scalar.cell_dofs.ravel(),
        weights=np.repeat(cell_sizes / n_local, n_local),
        minlength=scalar.n_scalar,
    )
    return LumpedMass(weights=weights)


def discrete_laplacian(
    space: FeSpace,
    u: FeFunction,
    lumped: LumpedMass,
    stiffness: Optional[SparseMatrix] = None,
) -> FeFunction:
    """
    Discrete Laplacian defined by -(lap u, v)_h = (grad u, grad v).

    With the diagonal lumped mass this is g(z) = -(K u)(z) / beta_z at every
    node, componentwise.

    :param space: linear space of u
    :type space: FeSpace
    :param u: function to differentiate
    :type u: FeFunction
    :param lumped: lumped mass of the space
    :type lumped: LumpedMass
    :param stiffness: optional scalar stiffness matrix to reuse
    :type stiffness: Optional[SparseMatrix]
    :return: nodal values of the discrete Laplacian
    :rtype: FeFunction
    """
    if space.degree != 1:
        raise UnsupportedDegreeError("Discrete Laplacian is defined for linear elements")
    if not space.compatible(u.space):
        raise InvalidArgumentError("Function does not belong to the space")
    if stiffness is None:
        stiffness = assemble_stiffness(space.scalar_space())
    values = -(stiffness @ u.components().T) / lumped.weights[:, None]
    return FeFunction.from_nodal(space, values[:, 0] if space.value_dim == 1 else values)
