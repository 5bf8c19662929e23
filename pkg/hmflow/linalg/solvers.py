import logging
from typing import Tuple

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from hmflow.exceptions import FactorizationError, InfSupError, InvalidArgumentError
from hmflow.linalg.sparse import KktSystem, SparseMatrix, as_csr, infinity_norm

logger = logging.getLogger(__name__)

RESIDUAL_TOLERANCE = 1e-10


def scaled_residual(matrix: SparseMatrix, x: np.ndarray, b: np.ndarray) -> float:
    """
    Residual |Mx - b|_inf relative to |M|_inf |x|_inf + |b|_inf.
    """
    scale = infinity_norm(matrix) * np.max(np.abs(x), initial=0.0) + np.max(
        np.abs(b), initial=0.0
    )
    residual = np.max(np.abs(matrix @ x - b), initial=0.0)
    return float(residual / scale) if scale > 0 else float(residual)


class Factorization:
    """
    Sparse LU factorization with fixed fill-reducing column ordering.

    Factorizations are immutable after construction and solves are reentrant,
    so one instance can serve many right hand sides.
    """

    def __init__(self, matrix: SparseMatrix) -> None:
        matrix = as_csr(matrix)
        if matrix.shape[0] != matrix.shape[1]:
            raise InvalidArgumentError(f"Matrix has to be square, got {matrix.shape}")
        self.matrix = matrix
        self.shape = matrix.shape
        try:
            self._lu = splu(sp.csc_matrix(matrix), permc_spec="COLAMD")
        except RuntimeError as exc:
            raise FactorizationError(f"Matrix is singular: {exc}") from exc

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        """
        Solves for one (n,) or several (n, k) right hand sides.

        :param rhs: right hand side
        :type rhs: np.ndarray
        :raises FactorizationError: if the solution is not finite
        :return: solution of the same shape
        :rtype: np.ndarray
        """
        x = self._lu.solve(np.asarray(rhs, dtype=float))
        if not np.all(np.isfinite(x)):
            raise FactorizationError("Matrix is singular to working precision")
        return x


def solve_direct(matrix: SparseMatrix, rhs: np.ndarray) -> np.ndarray:
    """
    Direct sparse solve with residual check.

    :param matrix: square nonsingular matrix
    :type matrix: SparseMatrix
    :param rhs: right hand side
    :type rhs: np.ndarray
    :raises FactorizationError: if the matrix is singular to tolerance
    :return: solution vector
    :rtype: np.ndarray
    """
    if matrix.shape[0] == 0:
        return np.zeros(0)
    factorization = Factorization(matrix)
    rhs = np.asarray(rhs, dtype=float)
    x = factorization.solve(rhs)
    residual = scaled_residual(factorization.matrix, x, rhs)
    if residual > RESIDUAL_TOLERANCE:
        raise FactorizationError(
            f"Direct solve residual {residual:.3e} exceeds {RESIDUAL_TOLERANCE:.0e}"
        )
    return x


def kkt_matrix(system: KktSystem) -> SparseMatrix:
    return sp.bmat([[system.A, system.B.T], [system.B, None]], format="csr")


def solve_kkt(system: KktSystem) -> Tuple[np.ndarray, np.ndarray]:
    """
    Solves the saddle point system by one sparse LU of the full block matrix.

    :param system: saddle point system
    :type system: KktSystem
    :raises InfSupError: if the constraint block is rank deficient
    :return: primal and dual solution
    :rtype: Tuple[np.ndarray, np.ndarray]
    """
    if system.n_dual == 0:
        return solve_direct(system.A, system.rhs_primal), np.zeros(0)
    row_norms = np.asarray(abs(system.B).sum(axis=1)).reshape(-1)
    if np.any(row_norms == 0.0):
        raise InfSupError("Constraint block has zero rows")
    matrix = kkt_matrix(system)
    rhs = np.concatenate([system.rhs_primal, system.rhs_dual])
    try:
        solution = Factorization(matrix).solve(rhs)
    except FactorizationError as exc:
        raise InfSupError(f"Saddle point system is singular: {exc}") from exc
    if __debug__:
        residual = scaled_residual(matrix, solution, rhs)
        logger.debug("KKT residual %.3e", residual)
        if residual > RESIDUAL_TOLERANCE:
            raise InfSupError(
                f"Saddle point residual {residual:.3e} exceeds {RESIDUAL_TOLERANCE:.0e}"
            )
    n = system.n_primal
    return solution[:n], solution[n:]
