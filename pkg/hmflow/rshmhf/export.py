"""
Reference solution files.

First line is ``# `` followed by a JSON object with the metadata
(p, n, h, tau, T, k, ic), then one ``r coefficient`` pair per dof in dof
order: vertices from r=0 to r=1, then element midpoints for p=2.
"""
from pathlib import Path
from typing import Tuple, Union

import numpy as np
import orjson
import pydantic
from pydantic import ConfigDict

from hmflow.exceptions import InvalidArgumentError
from hmflow.fem import FeFunction, FeSpace
from hmflow.mesh import build_interval_mesh


class ReferenceMetadata(pydantic.BaseModel):
    model_config = ConfigDict(frozen=True)

    p: int
    n: int
    h: float
    tau: float
    T: float
    k: int
    ic: str = "custom"


def write_reference(
    path: Union[str, Path], u: FeFunction, metadata: ReferenceMetadata
) -> Path:
    """
    Writes 1D solution with its metadata header.

    :param path: target file
    :type path: Union[str, Path]
    :param u: scalar interval function
    :type u: FeFunction
    :param metadata: discretization that produced u
    :type metadata: ReferenceMetadata
    :return: written path
    :rtype: Path
    """
    path = Path(path)
    columns = np.column_stack([u.space.dof_coordinates, u.coefficients])
    with path.open("w") as stream:
        stream.write("# " + orjson.dumps(metadata.model_dump()).decode() + "\n")
        np.savetxt(stream, columns, fmt="%.17g")
    return path


def read_reference(path: Union[str, Path]) -> Tuple[FeFunction, ReferenceMetadata]:
    """
    Reads a file written by ``write_reference`` and rebuilds its space.

    :param path: reference file
    :type path: Union[str, Path]
    :raises InvalidArgumentError: if the dof coordinates do not match the header
    :return: function and metadata
    :rtype: Tuple[FeFunction, ReferenceMetadata]
    """
    path = Path(path)
    with path.open() as stream:
        header = stream.readline()
    metadata = ReferenceMetadata(**orjson.loads(header.lstrip("#").strip()))
    columns = np.loadtxt(path, comments="#", ndmin=2)
    space = FeSpace(build_interval_mesh(metadata.n), metadata.p)
    if columns.shape != (space.n_dofs, 2) or np.max(
        np.abs(columns[:, 0] - space.dof_coordinates)
    ) > 1e-12:
        raise InvalidArgumentError(f"{path} does not match its header")
    return FeFunction(space, columns[:, 1]), metadata
