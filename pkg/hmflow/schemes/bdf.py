from fractions import Fraction
from typing import Literal, Sequence, Tuple, TypeVar

import pydantic
from pydantic import ConfigDict

from hmflow.exceptions import (
    InsufficientHistoryError,
    InvalidArgumentError,
    UnsupportedSchemeError,
)

State = TypeVar("State")

BDF_COEFFICIENTS = {
    1: (Fraction(1), Fraction(-1)),
    2: (Fraction(3, 2), Fraction(-2), Fraction(1, 2)),
}


def bdf_coefficients(k: int) -> Tuple[Fraction, ...]:
    """
    Coefficients delta_0..delta_k of the BDF time derivative
    (1/tau) * sum_i delta_i u^{j+1-i}.

    :param k: order, 1 or 2
    :type k: int
    :raises UnsupportedSchemeError: for any other order
    :return: exact rational coefficients
    :rtype: Tuple[Fraction, ...]
    """
    try:
        return BDF_COEFFICIENTS[k]
    except KeyError:
        raise UnsupportedSchemeError(f"BDF order {k} is not supported") from None


def extrapolate(history: Sequence[State], k: int) -> State:
    """
    Explicit predictor of the next state from the last k states,
    u^j for k=1 and 2u^j - u^{j-1} for k=2.

    History is ordered from oldest to newest.

    :param history: past states supporting + and scalar *
    :type history: Sequence[State]
    :param k: order, 1 or 2
    :type k: int
    :raises InsufficientHistoryError: if less than k states are given
    :return: extrapolated state
    :rtype: State
    """
    bdf_coefficients(k)
    if len(history) < k:
        raise InsufficientHistoryError(
            f"BDF{k} extrapolation needs {k} past states, got {len(history)}"
        )
    if k == 1:
        return history[-1]
    return 2.0 * history[-1] - history[-2]  # type: ignore


def history_sum(history: Sequence[State], k: int) -> State:
    """
    sum_{i=1..k} delta_i u^{j+1-i}, the known part of the BDF derivative.
    """
    delta = bdf_coefficients(k)
    if len(history) < k:
        raise InsufficientHistoryError(
            f"BDF{k} step needs {k} past states, got {len(history)}"
        )
    total = float(delta[1]) * history[-1]  # type: ignore
    for i in range(2, k + 1):
        total = total + float(delta[i]) * history[-i]  # type: ignore
    return total


class BdfScheme(pydantic.BaseModel):
    """
    BDF time discretization of order 1 or 2 together with the rule used to
    extrapolate linearization points (plain or nodally normalized).
    """

    model_config = ConfigDict(frozen=True)

    order: int = 1
    extrapolation: Literal["plain", "normalized"] = "plain"

    @pydantic.field_validator("order")
    @classmethod
    def supported_order(cls, value: int) -> int:
        bdf_coefficients(value)
        return value

    @property
    def coefficients(self) -> Tuple[float, ...]:
        return tuple(float(c) for c in bdf_coefficients(self.order))

    @property
    def delta0(self) -> float:
        return self.coefficients[0]

    def startup(self) -> "BdfScheme":
        """
        Scheme used for the first step: BDF1 with the same extrapolation rule.
        """
        return BdfScheme(order=1, extrapolation=self.extrapolation)


def time_steps(T: float, tau: float) -> int:
    """
    Number of steps J with J * tau = T.

    :param T: final time
    :type T: float
    :param tau: time step
    :type tau: float
    :raises InvalidArgumentError: if tau does not divide T
    :return: J >= 1
    :rtype: int
    """
    if T <= 0 or tau <= 0:
        raise InvalidArgumentError("Final time and time step have to be positive")
    steps = int(round(T / tau))
    if steps < 1 or abs(steps * tau - T) > 1e-9 * T:
        raise InvalidArgumentError(f"Time step {tau} does not divide final time {T}")
    return steps
