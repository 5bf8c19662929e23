from typing import Callable, NamedTuple, Optional

import numpy as np

from hmflow.exceptions import InvalidArgumentError
from hmflow.fem.space import FeFunction


class NormPair(NamedTuple):
    """
    L2 norm and full H1 norm (L2 part plus gradient seminorm).
    """

    l2: float
    h1: float


def squared_l2(u: FeFunction) -> float:
    quad = u.space.quadrature()
    values = u.values_at_quadrature()
    if values.ndim == 3:
        values = np.sqrt(np.sum(values ** 2, axis=0))
    return float(np.sum(quad.weights * values ** 2))


def squared_h1_seminorm(u: FeFunction) -> float:
    quad = u.space.quadrature()
    grads = u.gradients_at_quadrature()
    squared = np.sum(grads ** 2, axis=-1)
    if squared.ndim == 3:
        squared = squared.sum(axis=0)
    return float(np.sum(quad.weights * squared))


def l2_norm(u: FeFunction) -> float:
    return float(np.sqrt(squared_l2(u)))


def h1_seminorm(u: FeFunction) -> float:
    return float(np.sqrt(squared_h1_seminorm(u)))


def norms(u: FeFunction) -> NormPair:
    l2 = squared_l2(u)
    return NormPair(l2=float(np.sqrt(l2)), h1=float(np.sqrt(l2 + squared_h1_seminorm(u))))


def error_norms(a: FeFunction, b: FeFunction) -> NormPair:
    """
    Quadrature norms of a - b.

    :param a: first function
    :type a: FeFunction
    :param b: second function, same space
    :type b: FeFunction
    :raises InvalidArgumentError: if the functions live in different spaces
    :return: L2 and full H1 norm of the difference
    :rtype: NormPair
    """
    if not a.space.compatible(b.space):
        raise InvalidArgumentError("Error norms need functions of the same space")
    return norms(a - b)


def error_norms_to(
    u: FeFunction,
    f: Callable[[np.ndarray], np.ndarray],
    gradient: Optional[Callable[[np.ndarray], np.ndarray]] = None,
) -> NormPair:
    """
    Norms of u - f for a scalar function f known in closed form.

    The callables receive quadrature coordinates, (ne, nq) radii on intervals
    and (ne, nq, 2) points on disks; the gradient returns (..., dim).
    Without gradient the H1 entry equals the L2 entry.
    """
    if u.space.value_dim != 1:
        raise InvalidArgumentError("Closed form errors are computed for scalar functions")
    quad = u.space.quadrature()
    difference = u.values_at_quadrature() - f(quad.coordinates)
    l2 = float(np.sum(quad.weights * difference ** 2))
    if gradient is None:
        return NormPair(l2=float(np.sqrt(l2)), h1=float(np.sqrt(l2)))
    exact = np.asarray(gradient(quad.coordinates)).reshape(u.gradients_at_quadrature().shape)
    semi = float(np.sum(quad.weights * np.sum((u.gradients_at_quadrature() - exact) ** 2, axis=-1)))
    return NormPair(l2=float(np.sqrt(l2)), h1=float(np.sqrt(l2 + semi)))
