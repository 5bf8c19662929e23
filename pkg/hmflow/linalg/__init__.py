from hmflow.linalg.infsup import estimate_inf_sup
from hmflow.linalg.solvers import Factorization, solve_direct, solve_kkt
from hmflow.linalg.sparse import KktSystem, SparseMatrix, as_csr

__all__ = [
    "Factorization",
    "KktSystem",
    "SparseMatrix",
    "as_csr",
    "estimate_inf_sup",
    "solve_direct",
    "solve_kkt",
]
