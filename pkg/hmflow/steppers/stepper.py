import logging
import time
from typing import Callable, List, NamedTuple, Optional, TYPE_CHECKING

from hmflow.protocols import ProblemProtocol
from hmflow.steppers.metaclass import StepperMeta, StepperMetaclass

if TYPE_CHECKING:  # pragma no cover
    from hmflow.fem import FeFunction

logger = logging.getLogger(__name__)


class StepResult(NamedTuple):
    """
    Outcome of one time step. Only the state is always present,
    the remaining entries depend on the method.
    """

    state: "FeFunction"
    iterations: int = 0
    udot: Optional["FeFunction"] = None
    multiplier: Optional["FeFunction"] = None


class Stepper(metaclass=StepperMetaclass):
    """
    Base class of all time steppers.

    Concrete steppers declare an inner Meta with ``name``, supported BDF
    ``orders``, supported polynomial ``degrees`` and spatial ``dimension``.
    The metaclass validates it, attaches ``Meta.signals`` and registers
    the class under its name.
    """

    if TYPE_CHECKING:  # pragma no cover
        Meta: StepperMeta

    class Meta:
        abstract = True

    def __init__(self, problem: ProblemProtocol) -> None:
        self.problem = problem

    def step(self, history: List["FeFunction"], k: int) -> StepResult:
        raise NotImplementedError  # pragma: no cover

    def march(
        self,
        initial: "FeFunction",
        n_steps: int,
        tau: float,
        order: int,
        record: Optional[Callable[[int, float, StepResult], None]] = None,
    ) -> "FeFunction":
        """
        Runs the time loop, starting a BDF2 scheme with one BDF1 step of the
        same size and keeping only the states the scheme needs.

        Sends pre_solve before the first step, post_step after every step
        and post_solve at the end.

        :param initial: state at t=0
        :type initial: FeFunction
        :param n_steps: number of steps
        :type n_steps: int
        :param tau: time step
        :type tau: float
        :param order: BDF order
        :type order: int
        :param record: callback receiving step number, time and result
        :type record: Optional[Callable[[int, float, StepResult], None]]
        :return: final state
        :rtype: FeFunction
        """
        sender = type(self)
        signals = sender.Meta.signals
        signals.pre_solve.send(sender=sender, problem=self.problem, state=initial)
        history = [initial]
        started = time.perf_counter()
        for j in range(1, n_steps + 1):
            result = self.step(history, min(order, len(history)))
            history = (history + [result.state])[-order:]
            if record is not None:
                record(j, j * tau, result)
            signals.post_step.send(
                sender=sender,
                step=j,
                time=j * tau,
                state=result.state,
                iterations=result.iterations,
            )
        logger.debug(
            "%s: %s steps in %.3fs",
            sender.Meta.name,
            n_steps,
            time.perf_counter() - started,
        )
        signals.post_solve.send(sender=sender, problem=self.problem, state=history[-1])
        return history[-1]
