from typing import Any, Callable

import numpy as np
import pydantic
from pydantic import ConfigDict

from hmflow.exceptions import InvalidArgumentError
from hmflow.fem import FeSpace
from hmflow.schemes import time_steps

Profile = Callable[[np.ndarray], Any]


class Rshmhf1dProblem(pydantic.BaseModel):
    """
    Radially symmetric flow of the profile u(t, r) on [0, 1] with
    u(t, 0) = 0 and u(t, 1) = u0(1).
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    u0: Profile
    T: float = pydantic.Field(gt=0)
    tau: float = pydantic.Field(gt=0)
    space: FeSpace
    name: str = "custom"

    @pydantic.model_validator(mode="after")
    def check_problem(self) -> "Rshmhf1dProblem":
        if not self.space.is_interval or self.space.value_dim != 1:
            raise InvalidArgumentError("Radial problems need a scalar interval space")
        time_steps(self.T, self.tau)
        at_origin = float(np.asarray(self.u0(np.zeros(1)), dtype=float).reshape(-1)[0])
        if abs(at_origin) > 1e-12:
            raise InvalidArgumentError(f"Initial profile has u0(0) = {at_origin}")
        values = np.asarray(self.u0(self.space.dof_coordinates), dtype=float)
        if np.max(np.abs(values)) > np.pi + 1e-12:
            raise InvalidArgumentError("Initial profile exceeds pi, blow-up regime")
        return self

    @property
    def n_steps(self) -> int:
        return time_steps(self.T, self.tau)

    @property
    def boundary_values(self) -> np.ndarray:
        """
        Values at the boundary dofs r=0 and r=1.
        """
        at_one = float(np.asarray(self.u0(np.ones(1)), dtype=float).reshape(-1)[0])
        return np.array([0.0, at_one])
