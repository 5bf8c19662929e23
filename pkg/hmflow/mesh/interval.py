import numpy as np
import pydantic
from pydantic import ConfigDict

from hmflow.exceptions import InvalidArgumentError


class IntervalMesh(pydantic.BaseModel):
    """
    Equidistant partition of the closed unit interval used by the radial solver.
    Node 0 is the symmetry axis r=0 and the last node the boundary r=1.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    n_elems: int = pydantic.Field(ge=2)
    nodes: np.ndarray
    h: float = pydantic.Field(gt=0)

    @pydantic.model_validator(mode="after")
    def check_nodes(self) -> "IntervalMesh":
        nodes = self.nodes
        if nodes.shape != (self.n_elems + 1,):
            raise InvalidArgumentError(
                f"Expected {self.n_elems + 1} nodes, got {nodes.shape}"
            )
        if nodes[0] != 0.0 or nodes[-1] != 1.0:
            raise InvalidArgumentError("Interval nodes have to start at 0 and end at 1")
        if np.max(np.abs(np.diff(nodes) - self.h)) > 1e-14:
            raise InvalidArgumentError("Interval mesh has to be uniform")
        return self

    @property
    def dimension(self) -> int:
        return 1

    @property
    def n_vertices(self) -> int:
        return self.n_elems + 1

    @property
    def cells(self) -> np.ndarray:
        """
        Vertex pairs of all elements, shape (n_elems, 2).

        :return: left and right vertex of every element
        :rtype: np.ndarray
        """
        left = np.arange(self.n_elems)
        return np.stack([left, left + 1], axis=1)

    @property
    def boundary_vertices(self) -> np.ndarray:
        return np.array([0, self.n_elems])


def build_interval_mesh(n: int) -> IntervalMesh:
    """
    Builds uniform partition of [0, 1] into n elements.

    :param n: number of elements, at least 2
    :type n: int
    :raises InvalidArgumentError: if n < 2
    :return: mesh with h = 1/n
    :rtype: IntervalMesh
    """
    if n < 2:
        raise InvalidArgumentError(f"Interval mesh needs at least 2 elements, got {n}")
    nodes = np.arange(n + 1, dtype=float) / n
    return IntervalMesh(n_elems=n, nodes=nodes, h=1.0 / n)
