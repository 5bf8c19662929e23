from typing import Optional

import numpy as np
import scipy.sparse as sp

from hmflow.fem import FeFunction, FeSpace, assemble_mass, assemble_stiffness, vectorize
from hmflow.linalg import SparseMatrix


class FlowOperators:
    """
    Time independent matrices of a 2D flow problem, assembled once and
    shared by all steps of a trajectory.
    """

    def __init__(self, space: FeSpace) -> None:
        self.space = space
        self.scalar = space.scalar_space()
        self.scalar_mass = assemble_mass(self.scalar)
        self.scalar_stiffness = assemble_stiffness(self.scalar)
        self._mass: Optional[SparseMatrix] = None
        self._stiffness: Optional[SparseMatrix] = None

    @property
    def mass(self) -> SparseMatrix:
        if self._mass is None:
            self._mass = vectorize(self.space, self.scalar_mass)
        return self._mass

    @property
    def stiffness(self) -> SparseMatrix:
        if self._stiffness is None:
            self._stiffness = vectorize(self.space, self.scalar_stiffness)
        return self._stiffness

    def energy(self, u: FeFunction) -> float:
        """
        Dirichlet energy 1/2 int |grad u|^2.
        """
        components = u.components()
        return 0.5 * float(
            sum(c @ (self.scalar_stiffness @ c) for c in components)
        )

    def block(self, matrix: SparseMatrix) -> SparseMatrix:
        return sp.block_diag([matrix] * self.space.value_dim, format="csr")

    def boundary_values(self, u: FeFunction) -> np.ndarray:
        return u.coefficients[self.space.boundary_component_dofs]
