import inspect
from typing import Any, Callable, Dict, List, TYPE_CHECKING, Tuple, Type, Union

from hmflow.exceptions import SignalDefinitionError

if TYPE_CHECKING:  # pragma: no cover
    from hmflow.steppers import Stepper

ReceiverKey = Union[int, Tuple[int, int]]


def accepts_var_kwargs(func: Callable) -> bool:
    parameters = inspect.signature(func).parameters.values()
    return any(p.kind is inspect.Parameter.VAR_KEYWORD for p in parameters)


def receiver_key(target: Callable) -> ReceiverKey:
    """
    Bound methods are keyed by instance and function.
    """
    bound_to = getattr(target, "__self__", None)
    function = getattr(target, "__func__", None)
    if bound_to is not None and function is not None:
        return id(bound_to), id(function)
    return id(target)


class Signal:
    """
    Ordered collection of receivers called synchronously on send.

    Solvers send from inside the time loop, so receivers run in the order
    they were connected and before the next step starts.
    """

    def __init__(self) -> None:
        self._receivers: Dict[ReceiverKey, Callable] = {}

    def __len__(self) -> int:
        return len(self._receivers)

    def __contains__(self, receiver: Callable) -> bool:
        return receiver_key(receiver) in self._receivers

    def connect(self, receiver: Callable) -> None:
        """
        Adds receiver at the end of the call order, connecting twice is a no-op.

        :param receiver: callable taking sender and **kwargs
        :type receiver: Callable
        :raises SignalDefinitionError: if receiver is not callable or has no **kwargs
        """
        if not callable(receiver):
            raise SignalDefinitionError(f"Signal receiver {receiver!r} is not callable")
        if not accepts_var_kwargs(receiver):
            raise SignalDefinitionError(
                f"Signal receiver {getattr(receiver, '__name__', receiver)!r} "
                "has to accept **kwargs"
            )
        self._receivers.setdefault(receiver_key(receiver), receiver)

    def disconnect(self, receiver: Callable) -> bool:
        return self._receivers.pop(receiver_key(receiver), None) is not None

    def send(self, sender: Type["Stepper"], **kwargs: Any) -> List[Any]:
        return [func(sender=sender, **kwargs) for func in list(self._receivers.values())]


class SignalEmitter:
    """
    Namespace of signals of one stepper class; unknown names create
    an empty signal on first access.
    """

    if TYPE_CHECKING:  # pragma: no cover
        signals: Dict[str, Signal]

    def __init__(self) -> None:
        object.__setattr__(self, "signals", {})

    def __getattr__(self, item: str) -> Signal:
        return self.signals.setdefault(item, Signal())

    def __setattr__(self, key: str, value: Any) -> None:
        if not isinstance(value, Signal):
            raise SignalDefinitionError(f"{key} has to be a Signal, got {type(value)}")
        self.signals[key] = value
