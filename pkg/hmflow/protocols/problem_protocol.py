from typing import TYPE_CHECKING

try:
    from typing import Protocol, runtime_checkable
except ImportError:  # pragma: nocover
    from typing_extensions import Protocol, runtime_checkable  # type: ignore

if TYPE_CHECKING:  # pragma: nocover
    from hmflow.fem import FeSpace


@runtime_checkable
class ProblemProtocol(Protocol):  # pragma: nocover
    """
    What a stepper needs to know about the problem it advances.
    """

    space: "FeSpace"
    T: float
    tau: float

    @property
    def n_steps(self) -> int:
        ...
