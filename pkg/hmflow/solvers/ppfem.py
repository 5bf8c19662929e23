from typing import List, Optional, Sequence

from hmflow.fem import FeFunction, solve_dirichlet, weighted_mass_from_gradient
from hmflow.linalg import SparseMatrix
from hmflow.schemes import bdf_coefficients, extrapolate, history_sum
from hmflow.solvers.extrapolation import normalize_nodal
from hmflow.solvers.operators import FlowOperators
from hmflow.solvers.problem import Hmhf2dProblem
from hmflow.steppers import StepResult, Stepper, check_compatible


class PpfemStepper(Stepper):
    """
    Pointwise projection method: a linear implicit step

        (delta_0/tau) M + K - W(uhat),   W = mass weighted by |grad uhat|^2,

    followed by normalization of every nodal value. The linearization point
    is the plain extrapolation of the last states.
    """

    class Meta:
        name = "ppfem"
        orders = (1, 2)
        degrees = (1, 2)
        dimension = 2

    def __init__(
        self, problem: Hmhf2dProblem, operators: Optional[FlowOperators] = None
    ) -> None:
        super().__init__(problem)
        self.space = problem.space
        self.operators = operators or FlowOperators(problem.space)

    def system_matrix(self, uhat: FeFunction, k: int) -> SparseMatrix:
        delta0 = float(bdf_coefficients(k)[0])
        ops = self.operators
        weighted = weighted_mass_from_gradient(
            ops.scalar, uhat.gradients_at_quadrature()
        )
        scalar = (delta0 / self.problem.tau) * ops.scalar_mass + ops.scalar_stiffness
        return ops.block(scalar - weighted)

    def predict(self, history: List[FeFunction], k: int) -> FeFunction:
        """
        Solution of the linear step before the projection.
        """
        uhat = extrapolate(history, k)
        known = history_sum([u.coefficients for u in history], k)
        rhs = -(self.operators.mass @ known) / self.problem.tau
        solution = solve_dirichlet(
            self.system_matrix(uhat, k),
            rhs,
            self.space.boundary_component_dofs,
            self.operators.boundary_values(history[-1]),
        )
        return FeFunction(self.space, solution)

    def step(self, history: List[FeFunction], k: int) -> StepResult:
        return StepResult(state=normalize_nodal(self.predict(history, k)))


def ppfem_step(
    problem: Hmhf2dProblem, history: Sequence[FeFunction], k: int
) -> FeFunction:
    """
    Single projection step from the last k states.

    :param problem: 2D problem
    :type problem: Hmhf2dProblem
    :param history: past states, oldest first
    :type history: Sequence[FeFunction]
    :param k: BDF order of this step
    :type k: int
    :raises NormalizationError: if the linear step produces a zero nodal value
    :return: unit length state at the next time
    :rtype: FeFunction
    """
    check_compatible(PpfemStepper, problem.space.degree, k)
    return PpfemStepper(problem).step(list(history), k).state
