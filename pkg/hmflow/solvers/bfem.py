import logging
from typing import List, Optional, Tuple

import numpy as np

from hmflow.exceptions import FixedPointDivergenceError, UnsupportedDegreeError
from hmflow.fem import FeFunction, LumpedMass, lumped_mass
from hmflow.solvers.operators import FlowOperators
from hmflow.solvers.problem import FixedPointConfig, Hmhf2dProblem
from hmflow.steppers import StepResult, Stepper

logger = logging.getLogger(__name__)


def cross_matrices(a: np.ndarray) -> np.ndarray:
    """
    Matrices [a]_x with [a]_x w = a x w, one per row of a.

    :param a: vectors, shape (n, 3)
    :type a: np.ndarray
    :return: skew matrices, shape (n, 3, 3)
    :rtype: np.ndarray
    """
    matrices = np.zeros(a.shape[:-1] + (3, 3))
    matrices[..., 0, 1] = -a[..., 2]
    matrices[..., 0, 2] = a[..., 1]
    matrices[..., 1, 0] = a[..., 2]
    matrices[..., 1, 2] = -a[..., 0]
    matrices[..., 2, 0] = -a[..., 1]
    matrices[..., 2, 1] = a[..., 0]
    return matrices


class BfemStepper(Stepper):
    """
    Constraint preserving scheme in double cross product form with lumped
    inner products. Every step solves for the midpoint w = (u^{j+1} + u^j)/2

        (2/tau) w + w x (w^l x lap w^l) = (2/tau) u^j

    by fixed point iteration over l, starting at w^0 = u^j. With lumped
    products this is one 3x3 system per interior node. Boundary nodes keep
    their Dirichlet values and u^{j+1} = 2w - u^j preserves nodal lengths.
    """

    class Meta:
        name = "bfem"
        orders = (1,)
        degrees = (1,)
        dimension = 2

    def __init__(
        self, problem: Hmhf2dProblem, operators: Optional[FlowOperators] = None
    ) -> None:
        super().__init__(problem)
        if problem.space.degree != 1:
            raise UnsupportedDegreeError("BFEM is defined on linear elements")
        self.space = problem.space
        self.operators = operators or FlowOperators(problem.space)
        self.lumped: LumpedMass = lumped_mass(self.operators.scalar)
        self.interior = self.operators.scalar.interior_dofs
        self.config: FixedPointConfig = problem.fixed_point

    def laplacian(self, nodal: np.ndarray) -> np.ndarray:
        """
        Discrete Laplacian -(K w)/beta of nodal values, shape (n, 3).
        """
        return -(self.operators.scalar_stiffness @ nodal) / self.lumped.weights[:, None]

    def residual_norm(self, w_new: np.ndarray, w_old: np.ndarray) -> float:
        """
        Norm over interior nodes of w^{l+1} x lap e + e x lap w^l,
        e = w^{l+1} - w^l, as selected by the fixed point config.
        """
        e = w_new - w_old
        residual = np.cross(w_new, self.laplacian(e)) + np.cross(e, self.laplacian(w_old))
        squared = np.sum(residual[self.interior] ** 2, axis=1)
        if self.config.residual_norm == "max":
            return float(np.sqrt(np.max(squared, initial=0.0)))
        return float(np.sqrt(np.sum(self.lumped.weights[self.interior] * squared)))

    def midpoint(self, u: np.ndarray) -> Tuple[np.ndarray, int]:
        scale = 2.0 / self.problem.tau
        interior = self.interior
        identity = scale * np.eye(3)
        rhs = scale * u[interior]
        w = u.copy()
        for iteration in range(1, self.config.max_iterations + 1):
            a = np.cross(w, self.laplacian(w))[interior]
            matrices = identity - cross_matrices(a)
            w_new = u.copy()
            w_new[interior] = np.linalg.solve(matrices, rhs[..., None])[..., 0]
            residual = self.residual_norm(w_new, w)
            logger.debug("Fixed point iteration %s, residual %.3e", iteration, residual)
            w = w_new
            if residual < self.config.tolerance:
                return w, iteration
            if not np.isfinite(residual):
                break
        raise FixedPointDivergenceError(
            f"Fixed point iteration did not reach {self.config.tolerance:.1e} "
            f"within {self.config.max_iterations} iterations"
        )

    def step(self, history: List[FeFunction], k: int = 1) -> StepResult:
        u = history[-1].nodal()
        w, iterations = self.midpoint(u)
        return StepResult(
            state=FeFunction.from_nodal(self.space, 2.0 * w - u),
            iterations=iterations,
        )


def bfem_step(
    problem: Hmhf2dProblem, u_prev: FeFunction, cfg: Optional[FixedPointConfig] = None
) -> Tuple[FeFunction, int]:
    """
    Single constraint preserving step.

    :param problem: 2D problem on linear elements
    :type problem: Hmhf2dProblem
    :param u_prev: current state with unit nodal values
    :type u_prev: FeFunction
    :param cfg: stopping rule, defaults to the one of the problem
    :type cfg: Optional[FixedPointConfig]
    :raises FixedPointDivergenceError: if the inner iteration does not converge
    :return: next state and number of inner iterations
    :rtype: Tuple[FeFunction, int]
    """
    if cfg is not None:
        problem = problem.model_copy(update={"fixed_point": cfg})
    result = BfemStepper(problem).step([u_prev])
    return result.state, result.iterations
