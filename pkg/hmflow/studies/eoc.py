from typing import List, Optional, Sequence

import numpy as np

from hmflow.exceptions import InvalidArgumentError


def compute_eoc(
    errors: Sequence[float], ladder: Optional[Sequence[float]] = None
) -> List[Optional[float]]:
    """
    Experimental orders of convergence of consecutive errors.

    Without a ladder the values are assumed to halve, so
    EOC_i = log2(e_{i-1} / e_i). With a ladder the ratio of its values is used.

    :param errors: positive errors in ladder order
    :type errors: Sequence[float]
    :param ladder: tau or h values the errors belong to
    :type ladder: Optional[Sequence[float]]
    :raises InvalidArgumentError: for non-positive errors or a ladder of different length
    :return: orders, None for the first entry
    :rtype: List[Optional[float]]
    """
    values = np.asarray(errors, dtype=float)
    if values.size == 0:
        return []
    if np.any(~(values > 0)):
        raise InvalidArgumentError("EOC needs positive errors")
    if ladder is None:
        ratios = np.full(max(len(values) - 1, 0), 2.0)
    else:
        steps = np.asarray(ladder, dtype=float)
        if steps.shape != values.shape:
            raise InvalidArgumentError("Ladder and errors differ in length")
        ratios = steps[:-1] / steps[1:]
    orders = np.log(values[:-1] / values[1:]) / np.log(ratios)
    return [None] + [float(order) for order in orders]
