from typing import NamedTuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from hmflow.exceptions import UnsupportedDegreeError


class QuadratureRule(NamedTuple):
    """
    Points and weights on a reference cell.
    Interval points are coordinates in (0, 1), triangle points are
    barycentric triples, triangle weights sum up to 1/2.
    """

    points: np.ndarray
    weights: np.ndarray


def gauss_interval(n_points: int) -> QuadratureRule:
    """
    Gauss-Legendre rule mapped to (0, 1), exact up to degree 2*n_points - 1.
    All points are strictly interior, so r = 0 is never sampled.
    """
    points, weights = leggauss(n_points)
    return QuadratureRule(points=0.5 * (points + 1.0), weights=0.5 * weights)


def interval_rule(degree: int) -> QuadratureRule:
    """
    Rule exact for polynomials of degree 2p + 2 on elements of degree p.

    :param degree: polynomial degree p of the element
    :type degree: int
    :return: Gauss-Legendre rule with p + 2 points
    :rtype: QuadratureRule
    """
    if degree not in (1, 2):
        raise UnsupportedDegreeError(f"Polynomial degree {degree} is not supported")
    return gauss_interval(degree + 2)


def barycentric(xi: np.ndarray, eta: np.ndarray) -> np.ndarray:
    return np.stack([1.0 - xi - eta, xi, eta], axis=1)


def triangle_rule(degree: int) -> QuadratureRule:
    """
    Symmetric triangle rules: 3 points (degree 2 exact) for linear and
    7 points (degree 5 exact) for quadratic elements.

    :param degree: polynomial degree p of the element
    :type degree: int
    :return: rule on the reference triangle of area 1/2
    :rtype: QuadratureRule
    """
    if degree == 1:
        xi = np.array([1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0])
        eta = np.array([1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0])
        return QuadratureRule(points=barycentric(xi, eta), weights=np.full(3, 1.0 / 6.0))
    if degree == 2:
        sqrt15 = np.sqrt(15.0)
        a = (6.0 - sqrt15) / 21.0
        b = (6.0 + sqrt15) / 21.0
        xi = np.array([1.0 / 3.0, a, 1.0 - 2.0 * a, a, b, 1.0 - 2.0 * b, b])
        eta = np.array([1.0 / 3.0, a, a, 1.0 - 2.0 * a, b, b, 1.0 - 2.0 * b])
        wa = (155.0 - sqrt15) / 2400.0
        wb = (155.0 + sqrt15) / 2400.0
        weights = np.array([9.0 / 80.0, wa, wa, wa, wb, wb, wb])
        return QuadratureRule(points=barycentric(xi, eta), weights=weights)
    raise UnsupportedDegreeError(f"Polynomial degree {degree} is not supported")
