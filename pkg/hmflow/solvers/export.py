"""
Snapshot files of 2D states.

ASCII snapshots start with ``# `` and a JSON header (method, time, p, level)
followed by one ``x y u1 u2 u3`` row per scalar dof. The optional VTK
export writes point data ``u`` on linear or quadratic triangles.
"""
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np
import orjson

from hmflow.exceptions import InvalidArgumentError
from hmflow.fem import FeFunction

try:
    import meshio
except ImportError:  # pragma: no cover
    meshio = None


def snapshot_header(u: FeFunction, time: float, extra: Optional[Dict[str, Any]]) -> dict:
    mesh = u.space.mesh
    header = {
        "time": time,
        "p": u.space.degree,
        "level": getattr(mesh, "level", None),
        "columns": ["x", "y", "u1", "u2", "u3"],
    }
    header.update(extra or {})
    return header


def write_snapshot(
    path: Union[str, Path],
    u: FeFunction,
    time: float,
    extra: Optional[Dict[str, Any]] = None,
) -> Path:
    """
    Writes per-node table of a vector-valued disk function.

    :param path: target file
    :type path: Union[str, Path]
    :param u: state
    :type u: FeFunction
    :param time: time of the state
    :type time: float
    :param extra: additional header entries
    :type extra: Optional[Dict[str, Any]]
    :return: written path
    :rtype: Path
    """
    if u.space.is_interval or u.space.value_dim != 3:
        raise InvalidArgumentError("Snapshots are written for vector-valued disk functions")
    path = Path(path)
    columns = np.column_stack([u.space.dof_coordinates, u.nodal()])
    with path.open("w") as stream:
        stream.write("# " + orjson.dumps(snapshot_header(u, time, extra)).decode() + "\n")
        np.savetxt(stream, columns, fmt="%.17g")
    return path


def write_vtk(path: Union[str, Path], u: FeFunction) -> Path:
    """
    Writes legacy VTK file through meshio, requires the ``vtk`` extra.
    """
    if meshio is None:
        raise InvalidArgumentError("VTK export needs meshio, install hmflow[vtk]")
    space = u.space
    points = np.column_stack([space.dof_coordinates, np.zeros(space.n_scalar)])
    cell_type = "triangle" if space.degree == 1 else "triangle6"
    mesh = meshio.Mesh(
        points,
        [(cell_type, space.cell_dofs)],
        point_data={"u": np.ascontiguousarray(u.nodal())},
    )
    path = Path(path)
    meshio.write(str(path), mesh, file_format="vtk")
    return path
