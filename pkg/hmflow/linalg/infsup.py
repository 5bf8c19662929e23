import logging

import numpy as np
import scipy.linalg
import scipy.sparse as sp
from scipy.sparse.linalg import norm as sparse_norm

from hmflow.linalg.solvers import Factorization
from hmflow.linalg.sparse import SparseMatrix

logger = logging.getLogger(__name__)

SCHUR_CHUNK = 512


def schur_complement(B: SparseMatrix, Mv: SparseMatrix) -> np.ndarray:
    """
    Dense B Mv^{-1} B^T, symmetrized. Columns are solved in chunks.
    """
    B = sp.csr_matrix(B)
    factorization = Factorization(Mv)
    transposed = sp.csc_matrix(B.T)
    schur = np.empty((B.shape[0], B.shape[0]))
    for start in range(0, B.shape[0], SCHUR_CHUNK):
        stop = min(start + SCHUR_CHUNK, B.shape[0])
        schur[:, start:stop] = B @ factorization.solve(transposed[:, start:stop].toarray())
    return 0.5 * (schur + schur.T)


def estimate_inf_sup(
    B: SparseMatrix,
    Mv: SparseMatrix,
    Mw: SparseMatrix,
    tolerance: float = 1e-8,
    max_iterations: int = 500,
    seed: int = 0,
) -> float:
    """
    Inf-sup constant of the constraint form from the smallest eigenvalue of
    (B Mv^{-1} B^T) y = lambda Mw y, computed by inverse iteration.

    The iteration starts from a random vector drawn with the given seed, so
    it has a component along the lowest eigenvector with probability one and
    repeated calls give identical results.
    A constant that cannot be bounded away from zero (zero constraint,
    singular Schur complement, non-positive eigenvalue) is reported as 0.

    :param B: constraint matrix, rows are multiplier dofs
    :type B: SparseMatrix
    :param Mv: mass matrix of the primal space
    :type Mv: SparseMatrix
    :param Mw: mass matrix of the multiplier space
    :type Mw: SparseMatrix
    :param tolerance: relative tolerance on the eigenvalue
    :type tolerance: float
    :param max_iterations: iteration limit
    :type max_iterations: int
    :param seed: seed of the start vector
    :type seed: int
    :return: beta = sqrt(lambda_min)
    :rtype: float
    """
    B = sp.csr_matrix(B)
    if B.shape[0] == 0 or B.nnz == 0 or sparse_norm(B) == 0.0:
        logger.warning("Constraint matrix vanishes, inf-sup constant is 0")
        return 0.0
    schur = schur_complement(B, Mv)
    mass = sp.csr_matrix(Mw).toarray()
    try:
        factor = scipy.linalg.cho_factor(schur)
    except np.linalg.LinAlgError:
        logger.warning("Schur complement is not positive definite, inf-sup constant is 0")
        return 0.0

    y = np.random.default_rng(seed).standard_normal(schur.shape[0])
    y /= np.sqrt(y @ mass @ y)
    eigenvalue = float(y @ schur @ y)
    for iteration in range(1, max_iterations + 1):
        y = scipy.linalg.cho_solve(factor, mass @ y)
        y /= np.sqrt(y @ mass @ y)
        previous, eigenvalue = eigenvalue, float(y @ schur @ y)
        if abs(previous - eigenvalue) <= tolerance * abs(eigenvalue):
            logger.debug("Inverse iteration converged after %s steps", iteration)
            break
    else:
        logger.warning(
            "Inverse iteration stopped after %s steps, eigenvalue %.6e",
            max_iterations,
            eigenvalue,
        )
    if eigenvalue <= tolerance * np.max(np.diag(schur)):
        return 0.0
    return float(np.sqrt(eigenvalue))
