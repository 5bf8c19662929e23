import logging
import time
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np
import pydantic
from pydantic import ConfigDict

from hmflow.fem import (
    FeFunction,
    assemble_convection_1d,
    assemble_mass,
    assemble_stiffness,
    assemble_weighted_mass,
    interpolate,
    solve_dirichlet,
)
from hmflow.linalg import SparseMatrix
from hmflow.rshmhf.problem import Rshmhf1dProblem
from hmflow.schemes import bdf_coefficients, extrapolate, history_sum
from hmflow.steppers import StepResult, Stepper, check_compatible

logger = logging.getLogger(__name__)


def sinc(x: np.ndarray) -> np.ndarray:
    """
    sin(x)/x with the removable singularity at 0 filled by its series.
    """
    x = np.asarray(x, dtype=float)
    series = 1.0 - x ** 2 / 6.0 + x ** 4 / 120.0
    small = np.abs(x) < 2e-4
    safe = np.where(small, 1.0, x)
    return np.where(small, series, np.sin(safe) / safe)


def reaction_weight(uhat: np.ndarray, r: np.ndarray) -> np.ndarray:
    """
    sin(2u)/(2u r^2), the linearized weight of the sin(2u)/(2r^2) term.
    """
    return sinc(2.0 * uhat) / r ** 2


def extrapolate_1d(history: Sequence[FeFunction], k: int) -> FeFunction:
    """
    Linearization point of the radial scheme, plain extrapolation without
    normalization: u^j for k=1 and 2u^j - u^{j-1} for k=2.
    """
    return extrapolate(history, k)


class RadialStepper(Stepper):
    """
    One step of the linearized radial scheme

        (delta_0/tau) M + K - C + S(uhat),

    with C the (1/r u', v) convection matrix and S the mass weighted by
    sin(2 uhat)/(2 uhat r^2). Mass, stiffness and convection are assembled
    once per problem.
    """

    class Meta:
        name = "rshmhf"
        orders = (1, 2)
        degrees = (1, 2)
        dimension = 1

    def __init__(self, problem: Rshmhf1dProblem) -> None:
        super().__init__(problem)
        space = problem.space
        self.space = space
        self.mass = assemble_mass(space)
        self.stiffness = assemble_stiffness(space)
        self.convection = assemble_convection_1d(space)
        self.boundary_values = problem.boundary_values

    def system_matrix(self, uhat: FeFunction, k: int) -> SparseMatrix:
        delta0 = float(bdf_coefficients(k)[0])
        quad = self.space.quadrature()
        weight = reaction_weight(uhat.values_at_quadrature(), quad.coordinates)
        reaction = assemble_weighted_mass(self.space, weight)
        return (
            (delta0 / self.problem.tau) * self.mass
            + self.stiffness
            - self.convection
            + reaction
        )

    def step(self, history: List[FeFunction], k: int) -> StepResult:
        uhat = extrapolate_1d(history, k)
        known = history_sum([u.coefficients for u in history], k)
        rhs = -(self.mass @ known) / self.problem.tau
        solution = solve_dirichlet(
            self.system_matrix(uhat, k),
            rhs,
            self.space.boundary_dofs,
            self.boundary_values,
        )
        return StepResult(state=FeFunction(self.space, solution))


def rshmhf_step(
    problem: Rshmhf1dProblem, history: Sequence[FeFunction], k: int
) -> FeFunction:
    """
    Single step of the radial scheme from the last k states.

    :param problem: radial problem
    :type problem: Rshmhf1dProblem
    :param history: past states, oldest first
    :type history: Sequence[FeFunction]
    :param k: BDF order used for this step
    :type k: int
    :return: state at the next time
    :rtype: FeFunction
    """
    check_compatible(RadialStepper, problem.space.degree, k)
    return RadialStepper(problem).step(list(history), k).state


def energy_1d(u: FeFunction) -> float:
    """
    E(u) = pi * int_0^1 r u'^2 + sin^2(u)/r dr, Gauss points avoid r = 0.

    :param u: scalar function on an interval mesh
    :type u: FeFunction
    :return: energy
    :rtype: float
    """
    quad = u.space.quadrature()
    r = quad.coordinates
    values = u.values_at_quadrature()
    derivative = u.gradients_at_quadrature()[..., 0]
    density = r * derivative ** 2 + np.sin(values) ** 2 / r
    return float(np.pi * np.sum(quad.weights * density))


class RadialTrajectory(pydantic.BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    final: FeFunction
    times: List[float]
    energies: List[float]
    snapshots: Dict[float, FeFunction] = pydantic.Field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def steps(self) -> int:
        return len(self.times) - 1


def initial_state(problem: Rshmhf1dProblem) -> FeFunction:
    u = interpolate(problem.space, problem.u0)
    u.coefficients[problem.space.boundary_dofs] = problem.boundary_values
    return u


def solve_rshmhf(
    problem: Rshmhf1dProblem,
    k: int,
    snapshot_times: Optional[Iterable[float]] = None,
) -> RadialTrajectory:
    """
    Runs all J = T/tau steps, BDF2 starting with one BDF1 step.
    Energy is recorded for the initial state and after every step.

    :param problem: radial problem
    :type problem: Rshmhf1dProblem
    :param k: BDF order
    :type k: int
    :param snapshot_times: times at which copies of the state are kept
    :type snapshot_times: Optional[Iterable[float]]
    :return: final state, energies and requested snapshots
    :rtype: RadialTrajectory
    """
    check_compatible(RadialStepper, problem.space.degree, k)
    wanted = {int(round(t / problem.tau)): t for t in (snapshot_times or [])}
    initial = initial_state(problem)
    times = [0.0]
    energies = [energy_1d(initial)]
    snapshots: Dict[float, FeFunction] = {}
    if 0 in wanted:
        snapshots[wanted[0]] = initial.copy()

    def record(step: int, t: float, result: StepResult) -> None:
        times.append(t)
        energies.append(energy_1d(result.state))
        if step in wanted:
            snapshots[wanted[step]] = result.state.copy()

    started = time.perf_counter()
    final = RadialStepper(problem).march(
        initial, problem.n_steps, problem.tau, k, record=record
    )
    elapsed = time.perf_counter() - started
    logger.info(
        "Radial solve p=%s n=%s tau=%.3e BDF%s finished in %.2fs",
        problem.space.degree,
        problem.space.mesh.n_elems,
        problem.tau,
        k,
        elapsed,
    )
    return RadialTrajectory(
        final=final,
        times=times,
        energies=energies,
        snapshots=snapshots,
        wall_time=elapsed,
    )
