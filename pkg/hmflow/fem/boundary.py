from typing import NamedTuple

import numpy as np

from hmflow.exceptions import InvalidArgumentError
from hmflow.linalg import SparseMatrix, as_csr, solve_direct


class ReducedSystem(NamedTuple):
    """
    Interior block of a system after Dirichlet values were moved to the rhs.
    """

    matrix: SparseMatrix
    rhs: np.ndarray
    interior: np.ndarray
    dofs: np.ndarray
    values: np.ndarray

    def expand(self, interior_solution: np.ndarray) -> np.ndarray:
        full = np.empty(self.interior.size + self.dofs.size)
        full[self.interior] = interior_solution
        full[self.dofs] = self.values
        return full


def eliminate_dirichlet(
    matrix: SparseMatrix, rhs: np.ndarray, dofs: np.ndarray, values: np.ndarray
) -> ReducedSystem:
    """
    Removes rows and columns of constrained dofs, A_II x_I = b_I - A_IB g.

    :param matrix: full system matrix
    :type matrix: SparseMatrix
    :param rhs: full right hand side
    :type rhs: np.ndarray
    :param dofs: constrained dof indices
    :type dofs: np.ndarray
    :param values: prescribed values at those dofs
    :type values: np.ndarray
    :return: reduced system able to expand its solution back
    :rtype: ReducedSystem
    """
    matrix = as_csr(matrix)
    dofs = np.asarray(dofs, dtype=np.int64)
    values = np.asarray(values, dtype=float)
    if dofs.shape != values.shape:
        raise InvalidArgumentError("Each Dirichlet dof needs exactly one value")
    interior = np.setdiff1d(np.arange(matrix.shape[0]), dofs)
    reduced = matrix[interior][:, interior]
    coupled = matrix[interior][:, dofs]
    return ReducedSystem(
        matrix=reduced,
        rhs=np.asarray(rhs)[interior] - coupled @ values,
        interior=interior,
        dofs=dofs,
        values=values,
    )


def solve_dirichlet(
    matrix: SparseMatrix, rhs: np.ndarray, dofs: np.ndarray, values: np.ndarray
) -> np.ndarray:
    system = eliminate_dirichlet(matrix, rhs, dofs, values)
    return system.expand(solve_direct(system.matrix, system.rhs))
