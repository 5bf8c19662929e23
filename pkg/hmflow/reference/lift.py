"""
Lift of radial profiles to sphere-valued fields on the disk.

A profile u(r) defines the field

    F(u)(x, y) = (x/r sin u(r), y/r sin u(r), cos u(r)),   F(u)(0) = (0, 0, 1),

which is how 1D reference solutions are compared with 2D trajectories.
"""
from typing import Tuple

import numpy as np
import pydantic
from pydantic import ConfigDict

from hmflow.exceptions import InvalidArgumentError, OutOfDomainError
from hmflow.fem import FeFunction, FeSpace, NormPair, error_norms, evaluate, interpolate
from hmflow.rshmhf import ReferenceMetadata

ORIGIN_TOLERANCE = 1e-12


def spherical_map(points: np.ndarray, u: np.ndarray) -> np.ndarray:
    """
    Evaluates F(u) at points given the profile values u(|point|).

    :param points: points of shape (n, 2)
    :type points: np.ndarray
    :param u: profile values at the radii of the points, shape (n,)
    :type u: np.ndarray
    :return: unit vectors of shape (n, 3)
    :rtype: np.ndarray
    """
    radii = np.linalg.norm(points, axis=-1)
    at_origin = radii <= ORIGIN_TOLERANCE
    safe = np.where(at_origin, 1.0, radii)
    sine = np.sin(u)
    values = np.stack(
        [points[..., 0] / safe * sine, points[..., 1] / safe * sine, np.cos(u)],
        axis=-1,
    )
    values[at_origin] = (0.0, 0.0, 1.0)
    return values


def spherical_lift(u1d: FeFunction, target_space: FeSpace) -> FeFunction:
    """
    Nodal interpolant of F(u1d) in a vector-valued disk space.

    :param u1d: scalar radial profile on an interval mesh with u1d(0) = 0
    :type u1d: FeFunction
    :param target_space: vector-valued disk space
    :type target_space: FeSpace
    :raises InvalidArgumentError: for a profile not vanishing at 0 or a wrong target space
    :raises OutOfDomainError: if a dof lies outside the unit disk
    :return: lifted field with unit nodal values
    :rtype: FeFunction
    """
    if target_space.is_interval or target_space.value_dim != 3:
        raise InvalidArgumentError("Lift target has to be a vector-valued disk space")
    at_origin = float(evaluate(u1d, np.zeros(1))[0])
    if abs(at_origin) > ORIGIN_TOLERANCE:
        raise InvalidArgumentError(f"Radial profile has u(0) = {at_origin}")
    radii = np.linalg.norm(target_space.dof_coordinates, axis=1)
    if radii.max() > 1.0 + ORIGIN_TOLERANCE:
        raise OutOfDomainError(f"Dof at radius {radii.max()} outside of the unit disk")

    def lifted(points: np.ndarray) -> np.ndarray:
        profile = evaluate(u1d, np.minimum(np.linalg.norm(points, axis=1), 1.0))
        return spherical_map(points, profile)

    return interpolate(target_space, lifted)


class LiftedReference(pydantic.BaseModel):
    """
    Lifted 1D reference solution together with the discretization it came from.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    source: ReferenceMetadata
    target: FeFunction

    @pydantic.model_validator(mode="after")
    def unit_length(self) -> "LiftedReference":
        defect = np.max(np.abs(self.target.nodal_lengths() - 1.0))
        if defect > 1e-12:
            raise InvalidArgumentError(f"Lifted reference is off the sphere by {defect:.2e}")
        return self

    @classmethod
    def from_profile(
        cls, u1d: FeFunction, metadata: ReferenceMetadata, target_space: FeSpace
    ) -> "LiftedReference":
        return cls(source=metadata, target=spherical_lift(u1d, target_space))


def evaluate_against_reference(
    traj_final: FeFunction, ref: LiftedReference
) -> Tuple[float, float]:
    """
    L2 and H1 norms of the difference between a 2D state and the lifted reference.

    :raises InvalidArgumentError: if the state and the reference live in different spaces
    """
    pair: NormPair = error_norms(traj_final, ref.target)
    return pair.l2, pair.h1
