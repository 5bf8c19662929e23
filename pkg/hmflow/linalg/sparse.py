from typing import Any

import numpy as np
import pydantic
import scipy.sparse as sp
from pydantic import ConfigDict

from hmflow.exceptions import InvalidArgumentError

SparseMatrix = sp.csr_matrix


def as_csr(matrix: Any) -> SparseMatrix:
    """
    Converts to canonical CSR: summed duplicates, sorted column indices
    and finite values only.

    :param matrix: dense array or any scipy sparse matrix
    :type matrix: Any
    :raises InvalidArgumentError: for non-finite entries
    :return: canonical CSR matrix
    :rtype: SparseMatrix
    """
    csr = sp.csr_matrix(matrix, dtype=float)
    csr.sum_duplicates()
    csr.sort_indices()
    if not np.all(np.isfinite(csr.data)):
        raise InvalidArgumentError("Matrix has non-finite entries")
    return csr


def infinity_norm(matrix: SparseMatrix) -> float:
    if matrix.shape[0] == 0:
        return 0.0
    return float(abs(matrix).sum(axis=1).max())


class KktSystem(pydantic.BaseModel):
    """
    Saddle point system [[A, B^T], [B, 0]] (primal, dual) = (rhs_primal, rhs_dual).
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    A: SparseMatrix
    B: SparseMatrix
    rhs_primal: np.ndarray
    rhs_dual: np.ndarray

    @pydantic.field_validator("A", "B", mode="before")
    @classmethod
    def canonical_storage(cls, value: Any) -> SparseMatrix:
        return as_csr(value)

    @pydantic.field_validator("rhs_primal", "rhs_dual", mode="before")
    @classmethod
    def float_vectors(cls, value: Any) -> np.ndarray:
        return np.asarray(value, dtype=float).reshape(-1)

    @pydantic.model_validator(mode="after")
    def check_blocks(self) -> "KktSystem":
        n, m = self.n_primal, self.n_dual
        if self.A.shape != (n, n):
            raise InvalidArgumentError(f"A has to be square, got {self.A.shape}")
        if self.B.shape != (m, n):
            raise InvalidArgumentError(
                f"B has shape {self.B.shape}, expected ({m}, {n})"
            )
        if m >= n and m > 0:
            raise InvalidArgumentError("Constraint block needs less rows than columns")
        return self

    @property
    def n_primal(self) -> int:
        return self.rhs_primal.shape[0]

    @property
    def n_dual(self) -> int:
        return self.rhs_dual.shape[0]
