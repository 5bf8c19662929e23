from typing import Callable, Iterator, List, TYPE_CHECKING, Type, Union

if TYPE_CHECKING:  # pragma: no cover
    from hmflow.steppers import Stepper

Senders = Union[Type["Stepper"], List[Type["Stepper"]]]


def iter_senders(senders: Senders) -> Iterator[Type["Stepper"]]:
    if isinstance(senders, (list, tuple)):
        yield from senders
    else:
        yield senders


def receiver(signal: str, senders: Senders) -> Callable:
    """
    Connect decorated function to the signal of given name on every sender.

    Signal names other than the built-in ones are created on first use.

    :param signal: name of the signal to register to
    :type signal: str
    :param senders: one or a list of "Stepper" classes
    :type senders: Senders
    :raises SignalDefinitionError: if the function does not accept **kwargs
    :return: decorator returning the original function untouched
    :rtype: Callable
    """

    def _connect(func: Callable) -> Callable:
        for sender in iter_senders(senders):
            getattr(sender.Meta.signals, signal).connect(func)
        return func

    return _connect


def pre_solve(senders: Senders) -> Callable:
    """
    Receivers get ``problem`` and the initial ``state`` before the first step.
    """
    return receiver("pre_solve", senders)


def post_step(senders: Senders) -> Callable:
    """
    Receivers get ``step``, ``time``, the new ``state`` and the inner
    ``iterations`` after every step.
    """
    return receiver("post_step", senders)


def post_solve(senders: Senders) -> Callable:
    """
    Receivers get ``problem`` and the final ``state``.
    """
    return receiver("post_solve", senders)
