from typing import Any, Callable, NamedTuple, Optional, Tuple, Union

import numpy as np

from hmflow.exceptions import (
    InvalidArgumentError,
    OutOfDomainError,
    UnsupportedDegreeError,
)
from hmflow.fem.elements import (
    interval_basis,
    interval_gradients,
    triangle_basis,
    triangle_gradients,
)
from hmflow.fem.quadrature import interval_rule, triangle_rule
from hmflow.mesh import DiskMesh, IntervalMesh
from hmflow.mesh.geometry import inverse_jacobians, map_reference_points

Mesh = Union[IntervalMesh, DiskMesh]


class QuadratureData(NamedTuple):
    """
    Everything assembly needs at the quadrature points of all cells.

    coordinates: (ne, nq) radii on intervals, (ne, nq, 2) points on triangles
    weights: (ne, nq) reference weights times |det J|
    values: (nq, nb) shape function values
    gradients: (ne, nq, nb, dim) physical shape function gradients
    """

    coordinates: np.ndarray
    weights: np.ndarray
    values: np.ndarray
    gradients: np.ndarray


def interval_dofs(mesh: IntervalMesh, degree: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    cells = mesh.cells
    coordinates = mesh.nodes
    if degree == 2:
        n = mesh.n_elems
        mids = n + 1 + np.arange(n)
        cells = np.column_stack([cells, mids])
        coordinates = np.concatenate(
            [mesh.nodes, 0.5 * (mesh.nodes[:-1] + mesh.nodes[1:])]
        )
    return cells, coordinates, mesh.boundary_vertices


def disk_dofs(mesh: DiskMesh, degree: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    if degree == 1:
        return mesh.triangles, mesh.vertices, mesh.boundary_vertices
    nv = mesh.n_vertices
    cells = np.column_stack([mesh.triangles, nv + mesh.triangle_edges])
    coordinates = np.concatenate([mesh.vertices, mesh.edge_midpoints], axis=0)
    boundary = np.concatenate([mesh.boundary_vertices, nv + mesh.boundary_edges])
    return cells, coordinates, boundary


def interval_quadrature(mesh: IntervalMesh, degree: int) -> QuadratureData:
    rule = interval_rule(degree)
    lengths = np.diff(mesh.nodes)
    coordinates = mesh.nodes[:-1, None] + lengths[:, None] * rule.points[None, :]
    weights = lengths[:, None] * rule.weights[None, :]
    values = interval_basis(degree, rule.points)
    gradients = (
        interval_gradients(degree, rule.points)[None, :, :, None]
        / lengths[:, None, None, None]
    )
    return QuadratureData(coordinates, weights, values, gradients)


def disk_quadrature(mesh: DiskMesh, degree: int) -> QuadratureData:
    rule = triangle_rule(degree)
    coordinates, jacobians, dets = map_reference_points(mesh, rule.points, degree)
    weights = dets * rule.weights[None, :]
    inverse = inverse_jacobians(jacobians, dets)
    gradients = np.einsum(
        "tqji,qbj->tqbi", inverse, triangle_gradients(degree, rule.points)
    )
    values = triangle_basis(degree, rule.points)
    return QuadratureData(coordinates, weights, values, gradients)


class FeSpace:
    """
    Continuous piecewise polynomial space of degree 1 or 2 on an interval
    or disk mesh, scalar or with three components.

    Scalar dofs are numbered vertices first, then edges (triangles) or
    element midpoints (intervals). Vector-valued spaces block their dofs by
    component: scalar dof i of component c has index c * n_scalar + i.
    Degree-2 spaces use the quadratic geometry map, so on isoparametric
    meshes they follow the curved boundary.
    """

    def __init__(self, mesh: Mesh, degree: int, value_dim: int = 1) -> None:
        if degree not in (1, 2):
            raise UnsupportedDegreeError(f"Polynomial degree {degree} is not supported")
        if value_dim not in (1, 3):
            raise InvalidArgumentError(f"Value dimension has to be 1 or 3, got {value_dim}")
        self.mesh = mesh
        self.degree = degree
        self.value_dim = value_dim
        if isinstance(mesh, IntervalMesh):
            dofs = interval_dofs(mesh, degree)
        else:
            dofs = disk_dofs(mesh, degree)
        self.cell_dofs, self.dof_coordinates, self.boundary_dofs = dofs
        self.n_scalar = self.dof_coordinates.shape[0]
        self._quadrature: Optional[QuadratureData] = None
        self._scalar: Optional["FeSpace"] = None
        self._vector: Optional["FeSpace"] = None

    def __repr__(self) -> str:
        kind = type(self.mesh).__name__
        return (
            f"FeSpace({kind}, p={self.degree}, d={self.value_dim}, "
            f"dofs={self.n_dofs})"
        )

    @property
    def n_dofs(self) -> int:
        return self.n_scalar * self.value_dim

    @property
    def dimension(self) -> int:
        return self.mesh.dimension

    @property
    def is_interval(self) -> bool:
        return isinstance(self.mesh, IntervalMesh)

    @property
    def interior_dofs(self) -> np.ndarray:
        return np.setdiff1d(np.arange(self.n_scalar), self.boundary_dofs)

    def component_dofs(self, scalar_dofs: np.ndarray) -> np.ndarray:
        """
        Expands scalar dof indices to all components of the space.

        :param scalar_dofs: indices of scalar dofs
        :type scalar_dofs: np.ndarray
        :return: component-blocked indices into the coefficient vector
        :rtype: np.ndarray
        """
        return np.concatenate(
            [c * self.n_scalar + scalar_dofs for c in range(self.value_dim)]
        )

    @property
    def boundary_component_dofs(self) -> np.ndarray:
        return self.component_dofs(self.boundary_dofs)

    @property
    def interior_component_dofs(self) -> np.ndarray:
        return self.component_dofs(self.interior_dofs)

    def scalar_space(self) -> "FeSpace":
        if self.value_dim == 1:
            return self
        if self._scalar is None:
            self._scalar = FeSpace(self.mesh, self.degree, 1)
            self._scalar._vector = self
        return self._scalar

    def vector_space(self) -> "FeSpace":
        if self.value_dim == 3:
            return self
        if self._vector is None:
            self._vector = FeSpace(self.mesh, self.degree, 3)
            self._vector._scalar = self
        return self._vector

    def quadrature(self) -> QuadratureData:
        if self.value_dim != 1:
            return self.scalar_space().quadrature()
        if self._quadrature is None:
            if isinstance(self.mesh, IntervalMesh):
                self._quadrature = interval_quadrature(self.mesh, self.degree)
            else:
                self._quadrature = disk_quadrature(self.mesh, self.degree)
        return self._quadrature

    def compatible(self, other: "FeSpace") -> bool:
        return (
            self.mesh is other.mesh
            and self.degree == other.degree
            and self.value_dim == other.value_dim
        )


class FeFunction:
    """
    Coefficient vector bound to a finite element space.
    """

    __slots__ = ("space", "coefficients")

    def __init__(self, space: FeSpace, coefficients: Optional[np.ndarray] = None) -> None:
        if coefficients is None:
            coefficients = np.zeros(space.n_dofs)
        coefficients = np.array(coefficients, dtype=float)
        if coefficients.shape != (space.n_dofs,):
            raise InvalidArgumentError(
                f"Expected {space.n_dofs} coefficients, got {coefficients.shape}"
            )
        self.space = space
        self.coefficients = coefficients

    def __repr__(self) -> str:
        return f"FeFunction({self.space!r})"

    @classmethod
    def from_nodal(cls, space: FeSpace, values: np.ndarray) -> "FeFunction":
        """
        Builds function from per-node values, shape (n_scalar,) or (n_scalar, 3).
        """
        values = np.asarray(values, dtype=float)
        if space.value_dim == 1:
            return cls(space, values.reshape(-1))
        return cls(space, values.T.reshape(-1))

    def copy(self) -> "FeFunction":
        return FeFunction(self.space, self.coefficients)

    def nodal(self) -> np.ndarray:
        if self.space.value_dim == 1:
            return self.coefficients
        return self.components().T

    def components(self) -> np.ndarray:
        return self.coefficients.reshape(self.space.value_dim, self.space.n_scalar)

    def nodal_lengths(self) -> np.ndarray:
        return np.linalg.norm(self.components(), axis=0)

    def values_at_quadrature(self) -> np.ndarray:
        """
        Values at quadrature points, (ne, nq) for scalar
        and (3, ne, nq) for vector-valued functions.
        """
        quad = self.space.quadrature()
        local = self.components()[:, self.space.cell_dofs]
        values = np.einsum("deb,qb->deq", local, quad.values)
        return values[0] if self.space.value_dim == 1 else values

    def gradients_at_quadrature(self) -> np.ndarray:
        """
        Gradients at quadrature points, (ne, nq, dim) for scalar
        and (3, ne, nq, dim) for vector-valued functions.
        """
        quad = self.space.quadrature()
        local = self.components()[:, self.space.cell_dofs]
        grads = np.einsum("deb,eqbi->deqi", local, quad.gradients)
        return grads[0] if self.space.value_dim == 1 else grads

    def _coerce(self, other: Any) -> Union[np.ndarray, float]:
        if isinstance(other, FeFunction):
            if not self.space.compatible(other.space):
                raise InvalidArgumentError("Functions live in different spaces")
            return other.coefficients
        return other

    def __add__(self, other: Any) -> "FeFunction":
        return FeFunction(self.space, self.coefficients + self._coerce(other))

    def __sub__(self, other: Any) -> "FeFunction":
        return FeFunction(self.space, self.coefficients - self._coerce(other))

    def __mul__(self, other: float) -> "FeFunction":
        return FeFunction(self.space, self.coefficients * other)

    __rmul__ = __mul__

    def __neg__(self) -> "FeFunction":
        return FeFunction(self.space, -self.coefficients)


def interpolate(space: FeSpace, f: Callable[[np.ndarray], Any]) -> FeFunction:
    """
    Nodal interpolation of a vectorized callable.

    The callable receives all dof coordinates at once: radii of shape (n,)
    on interval meshes and points of shape (n, 2) on disk meshes. It returns
    (n,) values for scalar and (n, 3) values for vector-valued spaces;
    constants are broadcast.

    :param space: target space
    :type space: FeSpace
    :param f: function to interpolate
    :type f: Callable[[np.ndarray], Any]
    :return: function with nodal values of f
    :rtype: FeFunction
    """
    n = space.n_scalar
    values = np.asarray(f(space.dof_coordinates), dtype=float)
    shape = (n,) if space.value_dim == 1 else (n, space.value_dim)
    return FeFunction.from_nodal(space, np.broadcast_to(values, shape))


def evaluate(u: FeFunction, r: np.ndarray) -> np.ndarray:
    """
    Evaluates a scalar function on an interval mesh at arbitrary radii.

    :param u: scalar function on an interval mesh
    :type u: FeFunction
    :param r: radii in [0, 1]
    :type r: np.ndarray
    :raises OutOfDomainError: for radii outside of [0, 1]
    :return: values u(r), same shape as r
    :rtype: np.ndarray
    """
    space = u.space
    if not space.is_interval or space.value_dim != 1:
        raise InvalidArgumentError("Point evaluation needs a scalar interval function")
    r = np.asarray(r, dtype=float)
    if np.any(r < -1e-12) or np.any(r > 1.0 + 1e-12):
        raise OutOfDomainError("Evaluation point outside of [0, 1]")
    flat = np.clip(r.reshape(-1), 0.0, 1.0)
    mesh = space.mesh
    elems = np.clip(np.floor(flat / mesh.h).astype(int), 0, mesh.n_elems - 1)
    s = (flat - mesh.nodes[elems]) / mesh.h
    local = u.coefficients[space.cell_dofs[elems]]
    values = np.sum(local * interval_basis(space.degree, s), axis=1)
    return values.reshape(r.shape)


def prolong(u: FeFunction, space: FeSpace) -> FeFunction:
    """
    Exact transfer of a 1D function into a nested finer space.

    :param u: scalar function on a coarse interval mesh
    :type u: FeFunction
    :param space: space on a refinement of the mesh with degree >= u's degree
    :type space: FeSpace
    :raises InvalidArgumentError: if the spaces are not nested
    :return: the same piecewise polynomial expressed in the finer space
    :rtype: FeFunction
    """
    coarse = u.space
    if not (coarse.is_interval and space.is_interval):
        raise InvalidArgumentError("Prolongation is defined for interval spaces")
    if space.mesh.n_elems % coarse.mesh.n_elems or space.degree < coarse.degree:
        raise InvalidArgumentError(f"{space!r} does not contain {coarse!r}")
    return interpolate(space, lambda r: evaluate(u, r))
