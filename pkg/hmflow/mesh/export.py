"""
ASCII mesh dumps.

Layout, one block after another, each block starting with ``NAME count``::

    # {"kind": "disk", "level": 2, "isoparametric": true, "h": ...}
    VERTICES nv           x y
    TRIANGLES nt          v0 v1 v2            (counterclockwise)
    BOUNDARY nb           vertex index
    MIDPOINTS ne          edge v0 v1 x y      (circle-projected boundary midpoints)

Interval meshes only carry the header and the VERTICES block with one column.
"""
from pathlib import Path
from typing import IO, Union

import numpy as np
import orjson

from hmflow.mesh.disk import DiskMesh
from hmflow.mesh.interval import IntervalMesh


def write_block(stream: IO[str], name: str, data: np.ndarray, fmt: str) -> None:
    stream.write(f"{name} {data.shape[0]}\n")
    np.savetxt(stream, data, fmt=fmt)


def mesh_header(mesh: Union[IntervalMesh, DiskMesh]) -> dict:
    if isinstance(mesh, IntervalMesh):
        return {"kind": "interval", "n_elems": mesh.n_elems, "h": mesh.h}
    return {
        "kind": "disk",
        "level": mesh.level,
        "isoparametric": mesh.isoparametric,
        "h": mesh.h,
        "quality": mesh.quality(),
    }


def write_mesh(path: Union[str, Path], mesh: Union[IntervalMesh, DiskMesh]) -> Path:
    """
    Dumps mesh into documented ASCII format.

    :param path: target file
    :type path: Union[str, Path]
    :param mesh: mesh to dump
    :type mesh: Union[IntervalMesh, DiskMesh]
    :return: path of the written file
    :rtype: Path
    """
    path = Path(path)
    with path.open("w") as stream:
        stream.write("# " + orjson.dumps(mesh_header(mesh)).decode() + "\n")
        if isinstance(mesh, IntervalMesh):
            write_block(stream, "VERTICES", mesh.nodes[:, None], "%.17g")
            return path
        write_block(stream, "VERTICES", mesh.vertices, "%.17g")
        write_block(stream, "TRIANGLES", mesh.triangles, "%d")
        write_block(stream, "BOUNDARY", mesh.boundary_vertices[:, None], "%d")
        edge_ids = mesh.boundary_edges
        edge_vertices = mesh.edges[edge_ids]
        columns = np.column_stack([edge_ids, edge_vertices, mesh.curved_midpoints])
        stream.write(f"MIDPOINTS {columns.shape[0]}\n")
        for row in columns:
            stream.write(
                f"{int(row[0])} {int(row[1])} {int(row[2])} {row[3]:.17g} {row[4]:.17g}\n"
            )
    return path
