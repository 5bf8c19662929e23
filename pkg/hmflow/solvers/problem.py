import math
from enum import Enum
from typing import Any, Callable, Literal

import numpy as np
import pydantic
from pydantic import ConfigDict

from hmflow.exceptions import (
    InvalidArgumentError,
    UnsupportedDegreeError,
    UnsupportedSchemeError,
)
from hmflow.fem import FeSpace
from hmflow.schemes import bdf_coefficients, time_steps

SphereField = Callable[[np.ndarray], Any]


class Method(str, Enum):
    PPFEM = "ppfem"
    TFEM = "tfem"
    BFEM = "bfem"


class FixedPointConfig(pydantic.BaseModel):
    """
    Stopping rule of the inner iteration of the constraint preserving scheme.

    The residual is measured in the lumped L2 norm (``"lumped"``) or as the
    largest nodal Euclidean length over interior nodes (``"max"``).
    """

    model_config = ConfigDict(frozen=True)

    tolerance: float = pydantic.Field(default=1e-10, gt=0)
    max_iterations: int = pydantic.Field(default=100, ge=1)
    residual_norm: Literal["lumped", "max"] = "lumped"


class Hmhf2dProblem(pydantic.BaseModel):
    """
    Harmonic map heat flow on the unit disk with Dirichlet data u0 on the circle.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    u0: SphereField
    T: float = pydantic.Field(gt=0)
    tau: float = pydantic.Field(gt=0)
    space: FeSpace
    method: Method = Method.PPFEM
    k: int = 1
    fixed_point: FixedPointConfig = FixedPointConfig()

    @pydantic.field_validator("k")
    @classmethod
    def supported_order(cls, value: int) -> int:
        bdf_coefficients(value)
        return value

    @pydantic.model_validator(mode="after")
    def check_problem(self) -> "Hmhf2dProblem":
        if self.space.is_interval or self.space.value_dim != 3:
            raise InvalidArgumentError("2D problems need a vector-valued disk space")
        time_steps(self.T, self.tau)
        if self.method == Method.BFEM:
            if self.space.degree != 1:
                raise UnsupportedDegreeError("BFEM is defined on linear elements")
            if self.k != 1:
                raise UnsupportedSchemeError("BFEM uses BDF1")
        values = np.asarray(self.u0(self.space.dof_coordinates), dtype=float)
        lengths = np.linalg.norm(values.reshape(-1, 3), axis=1)
        if np.max(np.abs(lengths - 1.0)) > 1e-12:
            raise InvalidArgumentError("Initial field has to be unit length at all nodes")
        return self

    @property
    def n_steps(self) -> int:
        return time_steps(self.T, self.tau)


def default_bfem_tau(h: float, T: float) -> float:
    """
    Time step close to h^2/4 that divides T.

    :param h: mesh size
    :type h: float
    :param T: final time
    :type T: float
    :return: T / ceil(T / (h^2/4))
    :rtype: float
    """
    if h <= 0 or T <= 0:
        raise InvalidArgumentError("Mesh size and final time have to be positive")
    return T / math.ceil(T / (0.25 * h * h))
