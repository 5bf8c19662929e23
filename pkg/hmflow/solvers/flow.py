import logging
import time
from typing import Dict, Iterable, List, Optional

import numpy as np
import pydantic
from pydantic import ConfigDict

from hmflow.fem import FeFunction, interpolate
from hmflow.solvers.operators import FlowOperators
from hmflow.solvers.problem import Hmhf2dProblem
from hmflow.steppers import StepResult, check_compatible, get_stepper

logger = logging.getLogger(__name__)


class Trajectory(pydantic.BaseModel):
    """
    Final state of a 2D run with per-step diagnostics; index 0 is the
    initial state.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    method: str
    final: FeFunction
    times: List[float]
    energies: List[float]
    min_lengths: List[float]
    max_lengths: List[float]
    iterations: List[int] = pydantic.Field(default_factory=list)
    snapshots: Dict[float, FeFunction] = pydantic.Field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def steps(self) -> int:
        return len(self.times) - 1

    @property
    def mean_iterations(self) -> Optional[float]:
        if not self.iterations:
            return None
        return float(np.mean(self.iterations))

    @property
    def max_length_defect(self) -> float:
        return float(
            max(
                np.max(np.abs(np.array(self.max_lengths) - 1.0)),
                np.max(np.abs(np.array(self.min_lengths) - 1.0)),
            )
        )


def initial_field(problem: Hmhf2dProblem) -> FeFunction:
    return interpolate(problem.space, problem.u0)


def solve_hmhf(
    problem: Hmhf2dProblem, snapshot_times: Optional[Iterable[float]] = None
) -> Trajectory:
    """
    Runs J = T/tau steps of the selected method from the nodal interpolant
    of u0. BDF2 runs start with one BDF1 step of the same size. Records the
    Dirichlet energy and the range of nodal lengths after every step and,
    for BFEM, the number of inner iterations.

    :param problem: 2D problem
    :type problem: Hmhf2dProblem
    :param snapshot_times: times at which copies of the state are kept
    :type snapshot_times: Optional[Iterable[float]]
    :return: trajectory summary
    :rtype: Trajectory
    """
    stepper_class = get_stepper(problem.method.value)
    check_compatible(stepper_class, problem.space.degree, problem.k)
    operators = FlowOperators(problem.space)
    stepper = stepper_class(problem, operators)  # type: ignore
    wanted = {int(round(t / problem.tau)): t for t in (snapshot_times or [])}

    initial = initial_field(problem)
    lengths = initial.nodal_lengths()
    times = [0.0]
    energies = [operators.energy(initial)]
    min_lengths = [float(lengths.min())]
    max_lengths = [float(lengths.max())]
    iterations: List[int] = []
    snapshots: Dict[float, FeFunction] = {}
    if 0 in wanted:
        snapshots[wanted[0]] = initial.copy()

    def record(step: int, t: float, result: StepResult) -> None:
        state = result.state
        lengths = state.nodal_lengths()
        times.append(t)
        energies.append(operators.energy(state))
        min_lengths.append(float(lengths.min()))
        max_lengths.append(float(lengths.max()))
        if problem.method.value == "bfem":
            iterations.append(result.iterations)
        if step in wanted:
            snapshots[wanted[step]] = state.copy()

    started = time.perf_counter()
    final = stepper.march(initial, problem.n_steps, problem.tau, problem.k, record=record)
    elapsed = time.perf_counter() - started
    logger.info(
        "%s p=%s BDF%s tau=%.3e: %s steps in %.2fs",
        problem.method.value,
        problem.space.degree,
        problem.k,
        problem.tau,
        problem.n_steps,
        elapsed,
    )
    return Trajectory(
        method=problem.method.value,
        final=final,
        times=times,
        energies=energies,
        min_lengths=min_lengths,
        max_lengths=max_lengths,
        iterations=iterations,
        snapshots=snapshots,
        wall_time=elapsed,
    )
