import logging
from typing import List, Tuple

import numpy as np
import pydantic
from pydantic import ConfigDict

from hmflow.exceptions import InvalidArgumentError

logger = logging.getLogger(__name__)

# local vertex pairs of the three triangle edges, P2 mid-nodes follow this order
LOCAL_EDGES = np.array([[0, 1], [1, 2], [2, 0]])


class DiskMesh(pydantic.BaseModel):
    """
    Conforming, counterclockwise oriented triangulation of the closed unit disk.

    Besides vertices and triangles the mesh keeps the edge table used by
    quadratic elements and, per boundary edge, the midpoint projected onto
    the unit circle. On isoparametric meshes the projected midpoint replaces
    the straight one in ``edge_midpoints`` so quadratic geometry maps follow
    the circle.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    level: int = pydantic.Field(ge=0)
    isoparametric: bool = False
    vertices: np.ndarray
    triangles: np.ndarray
    boundary_vertices: np.ndarray
    edges: np.ndarray
    triangle_edges: np.ndarray
    boundary_edges: np.ndarray
    curved_midpoints: np.ndarray
    edge_midpoints: np.ndarray
    curved_triangles: np.ndarray
    h: float = pydantic.Field(gt=0)

    @property
    def dimension(self) -> int:
        return 2

    @property
    def n_vertices(self) -> int:
        return self.vertices.shape[0]

    @property
    def n_edges(self) -> int:
        return self.edges.shape[0]

    @property
    def cells(self) -> np.ndarray:
        return self.triangles

    @property
    def geometry_degree(self) -> int:
        return 2 if self.isoparametric else 1

    def triangle_nodes(self) -> np.ndarray:
        """
        Six geometry nodes of every triangle: three vertices followed by the
        midpoints of local edges (0,1), (1,2), (2,0).

        :return: array of shape (n_triangles, 6, 2)
        :rtype: np.ndarray
        """
        corners = self.vertices[self.triangles]
        mids = self.edge_midpoints[self.triangle_edges]
        return np.concatenate([corners, mids], axis=1)

    def areas(self) -> np.ndarray:
        """
        Areas of the straight-sided triangles.

        :return: array of shape (n_triangles,)
        :rtype: np.ndarray
        """
        p = self.vertices[self.triangles]
        e1 = p[:, 1] - p[:, 0]
        e2 = p[:, 2] - p[:, 0]
        return 0.5 * (e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])

    def diameters(self) -> np.ndarray:
        return triangle_diameters(self.vertices[self.triangles])

    def inradii(self) -> np.ndarray:
        p = self.vertices[self.triangles]
        perimeter = np.linalg.norm(p[:, [1, 2, 0]] - p, axis=2).sum(axis=1)
        return 2.0 * self.areas() / perimeter

    def quality(self) -> float:
        """
        Shape regularity measure: max diameter over min inradius.

        :return: quality ratio, 2*sqrt(3) for a mesh of equilateral triangles
        :rtype: float
        """
        return float(self.diameters().max() / self.inradii().min())


def triangle_diameters(points: np.ndarray) -> np.ndarray:
    lengths = np.linalg.norm(points[:, [1, 2, 0]] - points, axis=2)
    return lengths.max(axis=1)


def ring_start(j: int) -> int:
    """
    Global index of the first vertex on ring j, center vertex has index 0.
    """
    return 1 + 3 * j * (j - 1)


def ring_vertices(level: int) -> np.ndarray:
    rings = 2 ** level
    points = [np.zeros((1, 2))]
    for j in range(1, rings + 1):
        angles = 2.0 * np.pi * np.arange(6 * j) / (6 * j)
        radius = j / rings
        points.append(radius * np.stack([np.cos(angles), np.sin(angles)], axis=1))
    return np.concatenate(points, axis=0)


def stitch_rings(j: int) -> List[Tuple[int, int, int]]:
    """
    Triangulates the strip between ring j-1 and ring j by merging both
    rings in angular order. Ties advance the outer ring first.

    :param j: index of the outer ring, j >= 2
    :type j: int
    :return: counterclockwise vertex triples
    :rtype: List[Tuple[int, int, int]]
    """
    n_in, n_out = 6 * (j - 1), 6 * j
    start_in, start_out = ring_start(j - 1), ring_start(j)

    def inner(a: int) -> int:
        return start_in + a % n_in

    def outer(b: int) -> int:
        return start_out + b % n_out

    triangles = []
    a = b = 0
    while a < n_in or b < n_out:
        advance_outer = b < n_out and (
            a == n_in or (b + 1) * (j - 1) <= (a + 1) * j
        )
        if advance_outer:
            triangles.append((inner(a), outer(b), outer(b + 1)))
            b += 1
        else:
            triangles.append((inner(a), outer(b), inner(a + 1)))
            a += 1
    return triangles


def ring_triangles(level: int) -> np.ndarray:
    triangles = [(0, 1 + i, 1 + (i + 1) % 6) for i in range(6)]
    for j in range(2, 2 ** level + 1):
        triangles.extend(stitch_rings(j))
    return np.array(triangles, dtype=np.int64)


def edge_table(triangles: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Builds unique edges of a triangulation.

    :param triangles: vertex triples
    :type triangles: np.ndarray
    :return: sorted edge vertex pairs, local to global edge map and
    number of triangles sharing each edge
    :rtype: Tuple[np.ndarray, np.ndarray, np.ndarray]
    """
    local = np.sort(triangles[:, LOCAL_EDGES], axis=2).reshape(-1, 2)
    edges, inverse, counts = np.unique(
        local, axis=0, return_inverse=True, return_counts=True
    )
    return edges, inverse.reshape(-1, 3), counts


def build_disk_mesh(level: int, isoparametric: bool = False) -> DiskMesh:
    """
    Builds concentric-ring triangulation of the unit disk.

    Ring j of the 2**level rings lies at radius j/2**level and carries 6*j
    uniformly spaced vertices, so boundary vertices lie on the unit circle.
    Adjacent rings are stitched into a strip of triangles, the innermost ring
    is a fan around the center.

    :param level: refinement level, h is roughly 2**-level
    :type level: int
    :param isoparametric: store circle-projected midpoints as geometry of boundary edges
    :type isoparametric: bool
    :raises InvalidArgumentError: for negative level
    :return: deterministic disk mesh
    :rtype: DiskMesh
    """
    if level < 0:
        raise InvalidArgumentError(f"Refinement level has to be non-negative, got {level}")
    rings = 2 ** level
    vertices = ring_vertices(level)
    triangles = ring_triangles(level)
    edges, triangle_edges, counts = edge_table(triangles)
    if counts.max() > 2:
        raise InvalidArgumentError("Triangulation is not conforming")  # pragma: no cover

    boundary_edges = np.flatnonzero(counts == 1)
    boundary_start = ring_start(rings)
    boundary_vertices = np.arange(boundary_start, boundary_start + 6 * rings)

    # angle of a boundary edge midpoint is fixed by its lower ring position,
    # the closing edge pairs the last vertex with vertex 0
    pairs = edges[boundary_edges] - boundary_start
    position = np.where(pairs[:, 1] - pairs[:, 0] == 1, pairs[:, 0], pairs[:, 1])
    mid_angles = 2.0 * np.pi * (position + 0.5) / (6 * rings)
    curved_midpoints = np.stack([np.cos(mid_angles), np.sin(mid_angles)], axis=1)

    edge_midpoints = 0.5 * (vertices[edges[:, 0]] + vertices[edges[:, 1]])
    curved_triangles = np.zeros(triangles.shape[0], dtype=bool)
    if isoparametric:
        edge_midpoints[boundary_edges] = curved_midpoints
        curved_triangles = np.isin(triangle_edges, boundary_edges).any(axis=1)

    mesh = DiskMesh(
        level=level,
        isoparametric=isoparametric,
        vertices=vertices,
        triangles=triangles,
        boundary_vertices=boundary_vertices,
        edges=edges,
        triangle_edges=triangle_edges,
        boundary_edges=boundary_edges,
        curved_midpoints=curved_midpoints,
        edge_midpoints=edge_midpoints,
        curved_triangles=curved_triangles,
        h=float(triangle_diameters(vertices[triangles]).max()),
    )
    logger.debug(
        "Disk mesh level %s: %s vertices, %s triangles, h=%.4e",
        level,
        mesh.n_vertices,
        triangles.shape[0],
        mesh.h,
    )
    return mesh
