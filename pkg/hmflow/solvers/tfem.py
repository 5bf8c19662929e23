from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp

from hmflow.fem import FeFunction, FeSpace, assemble_weighted_mass
from hmflow.linalg import KktSystem, SparseMatrix, estimate_inf_sup, solve_kkt
from hmflow.schemes import bdf_coefficients, history_sum
from hmflow.solvers.extrapolation import extrapolate_2d_normalized
from hmflow.solvers.operators import FlowOperators
from hmflow.solvers.problem import Hmhf2dProblem
from hmflow.steppers import StepResult, Stepper, check_compatible


class TfemStep(NamedTuple):
    u_next: FeFunction
    udot: FeFunction
    multiplier: FeFunction


def constraint_matrix(space: FeSpace, uhat: FeFunction) -> SparseMatrix:
    """
    Matrix of b(uhat; v, w) = (uhat . v, w) with rows for interior scalar
    multiplier dofs and columns for interior vector dofs (component blocked).

    :param space: vector-valued space
    :type space: FeSpace
    :param uhat: linearization field in the same space
    :type uhat: FeFunction
    :return: sparse constraint matrix
    :rtype: SparseMatrix
    """
    scalar = space.scalar_space()
    interior = scalar.interior_dofs
    values = uhat.values_at_quadrature()
    blocks = []
    for component in values:
        weighted = assemble_weighted_mass(scalar, component)
        blocks.append(weighted[interior][:, interior])
    return sp.hstack(blocks, format="csr")


def constraint_mass_matrices(
    operators: FlowOperators,
) -> Tuple[SparseMatrix, SparseMatrix]:
    """
    Interior mass matrices of the primal (vector) and multiplier (scalar) space.
    """
    interior = operators.scalar.interior_dofs
    scalar_mass = operators.scalar_mass[interior][:, interior]
    return operators.block(scalar_mass), scalar_mass


class TfemStepper(Stepper):
    """
    Tangent space method: solves for the time derivative udot, constrained by
    a Lagrange multiplier to be orthogonal to the normalized extrapolation,

        [[M + (tau/delta_0) K, B^T], [B, 0]],

    then updates u^{j+1} = (tau/delta_0) udot - sum_i (delta_i/delta_0) u^{j+1-i}.
    udot vanishes on the boundary.
    """

    class Meta:
        name = "tfem"
        orders = (1, 2)
        degrees = (1, 2)
        dimension = 2

    def __init__(
        self, problem: Hmhf2dProblem, operators: Optional[FlowOperators] = None
    ) -> None:
        super().__init__(problem)
        self.space = problem.space
        self.operators = operators or FlowOperators(problem.space)
        self.interior = self.space.interior_component_dofs

    def saddle_point_system(self, history: List[FeFunction], k: int) -> KktSystem:
        delta0 = float(bdf_coefficients(k)[0])
        ops = self.operators
        uhat = extrapolate_2d_normalized(history, k)
        primal = ops.mass + (self.problem.tau / delta0) * ops.stiffness
        known = history_sum([u.coefficients for u in history], k)
        constraint = constraint_matrix(self.space, uhat)
        return KktSystem(
            A=primal[self.interior][:, self.interior],
            B=constraint,
            rhs_primal=(ops.stiffness @ known)[self.interior] / delta0,
            rhs_dual=np.zeros(constraint.shape[0]),
        )

    def solve(self, history: List[FeFunction], k: int) -> TfemStep:
        delta0 = float(bdf_coefficients(k)[0])
        primal, dual = solve_kkt(self.saddle_point_system(history, k))
        udot = np.zeros(self.space.n_dofs)
        udot[self.interior] = primal
        known = history_sum([u.coefficients for u in history], k)
        u_next = (self.problem.tau * udot - known) / delta0
        scalar = self.space.scalar_space()
        multiplier = np.zeros(scalar.n_dofs)
        multiplier[scalar.interior_dofs] = dual
        return TfemStep(
            u_next=FeFunction(self.space, u_next),
            udot=FeFunction(self.space, udot),
            multiplier=FeFunction(scalar, multiplier),
        )

    def step(self, history: List[FeFunction], k: int) -> StepResult:
        result = self.solve(history, k)
        return StepResult(
            state=result.u_next, udot=result.udot, multiplier=result.multiplier
        )


def tfem_step(
    problem: Hmhf2dProblem, history: Sequence[FeFunction], k: int
) -> TfemStep:
    """
    Single tangent space step from the last k states.

    :param problem: 2D problem
    :type problem: Hmhf2dProblem
    :param history: past states, oldest first
    :type history: Sequence[FeFunction]
    :param k: BDF order of this step
    :type k: int
    :raises InfSupError: if the saddle point system is singular
    :return: next state, time derivative and multiplier
    :rtype: TfemStep
    """
    check_compatible(TfemStepper, problem.space.degree, k)
    return TfemStepper(problem).solve(list(history), k)


def inf_sup_constant(
    space: FeSpace, uhat: FeFunction, operators: Optional[FlowOperators] = None
) -> float:
    """
    Inf-sup constant of the constraint form b(uhat; v, w) on the interior dofs.
    """
    mv, mw = constraint_mass_matrices(operators or FlowOperators(space))
    return estimate_inf_sup(constraint_matrix(space, uhat), mv, mw)
