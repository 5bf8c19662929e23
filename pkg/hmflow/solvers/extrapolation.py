from typing import Sequence

import numpy as np

from hmflow.exceptions import DegenerateExtrapolationError, NormalizationError
from hmflow.fem import FeFunction
from hmflow.schemes import extrapolate

EXTRAPOLATION_FLOOR = 1e-8
NORMALIZATION_FLOOR = 1e-12


def normalize_nodal(u: FeFunction, floor: float = NORMALIZATION_FLOOR) -> FeFunction:
    """
    Projects every nodal value onto the unit sphere.

    :param u: vector-valued function
    :type u: FeFunction
    :param floor: smallest admissible nodal length
    :type floor: float
    :raises NormalizationError: if a nodal value is shorter than floor
    :return: function with unit nodal values
    :rtype: FeFunction
    """
    components = u.components()
    lengths = np.linalg.norm(components, axis=0)
    short = np.flatnonzero(lengths < floor)
    if short.size:
        raise NormalizationError(
            f"Nodal value {int(short[0])} has length {lengths[short[0]]:.3e}"
        )
    return FeFunction(u.space, (components / lengths).reshape(-1))


def extrapolate_2d_normalized(history: Sequence[FeFunction], k: int) -> FeFunction:
    """
    Extrapolated field normalized at every node.

    :param history: past states, oldest first
    :type history: Sequence[FeFunction]
    :param k: BDF order
    :type k: int
    :raises DegenerateExtrapolationError: if a nodal value is shorter than 1e-8
    :return: field with |uhat(z)| = 1 at all nodes
    :rtype: FeFunction
    """
    raw = extrapolate(history, k)
    try:
        return normalize_nodal(raw, EXTRAPOLATION_FLOOR)
    except NormalizationError as exc:
        raise DegenerateExtrapolationError(str(exc)) from exc
