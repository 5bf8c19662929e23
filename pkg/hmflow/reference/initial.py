from enum import Enum

import numpy as np

from hmflow.reference.lift import spherical_map


class InitialCondition(str, Enum):
    """
    Radial initial profiles u0(r) of the experiments. Both vanish at r = 0
    and stay below pi, so the flow exists for all times.
    """

    HALFPI_R2 = "halfpi_r2"
    SIN2PIR_PLUS_R = "sin2pir_plus_r"

    def profile(self, r: np.ndarray) -> np.ndarray:
        """
        u0(r) = pi/2 r^2 or u0(r) = pi/2 (sin(2 pi r) + r).
        """
        r = np.asarray(r, dtype=float)
        if self is InitialCondition.HALFPI_R2:
            return 0.5 * np.pi * r ** 2
        return 0.5 * np.pi * (np.sin(2.0 * np.pi * r) + r)

    def derivative(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        if self is InitialCondition.HALFPI_R2:
            return np.pi * r
        return 0.5 * np.pi * (2.0 * np.pi * np.cos(2.0 * np.pi * r) + 1.0)

    def field(self, points: np.ndarray) -> np.ndarray:
        """
        Sphere-valued 2D initial field F(u0) at points of shape (n, 2).
        """
        points = np.asarray(points, dtype=float)
        radii = np.linalg.norm(points, axis=-1)
        return spherical_map(points, self.profile(radii))
