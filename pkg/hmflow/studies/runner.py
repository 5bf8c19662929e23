import logging
import math
from concurrent.futures import ProcessPoolExecutor
from itertools import repeat
from pathlib import Path
from typing import Any, Dict, List, NamedTuple, Optional, Union

from hmflow.exceptions import HmflowException
from hmflow.fem import FeFunction, FeSpace, error_norms, prolong
from hmflow.mesh import DiskMesh, IntervalMesh, build_disk_mesh, build_interval_mesh
from hmflow.reference import (
    LiftedReference,
    build_reference,
    evaluate_against_reference,
    reference_metadata,
)
from hmflow.rshmhf import Rshmhf1dProblem, solve_rshmhf
from hmflow.solvers import FixedPointConfig, Hmhf2dProblem, Method, solve_hmhf
from hmflow.studies.eoc import compute_eoc
from hmflow.studies.report import ErrorReport, ErrorRow
from hmflow.studies.spec import StudySpec

logger = logging.getLogger(__name__)

# quadratic PPFEM is known to exceed its optimal spatial order on this problem
SUPERCONVERGENCE_EOC = 3.5


class CellResult(NamedTuple):
    l2: float
    h1: float
    wall_time: float
    steps: int
    iterations: Optional[float] = None


def disk_level(h: float) -> int:
    return int(round(-math.log2(h)))


def study_mesh(spec: StudySpec, h: float) -> Union[IntervalMesh, DiskMesh]:
    """
    Mesh of one ladder cell: N = 1/h elements in 1D, level -log2(h) in 2D.
    """
    if spec.is_radial:
        return build_interval_mesh(int(round(1.0 / h)))
    return build_disk_mesh(disk_level(h), isoparametric=spec.p == 2)


def radial_cell(spec: StudySpec, h: float, tau: float, reference: FeFunction) -> CellResult:
    space = FeSpace(study_mesh(spec, h), spec.p)
    problem = Rshmhf1dProblem(
        u0=spec.ic.profile, T=spec.T, tau=tau, space=space, name=spec.ic.value
    )
    trajectory = solve_rshmhf(problem, spec.k)
    pair = error_norms(prolong(trajectory.final, reference.space), reference)
    return CellResult(pair.l2, pair.h1, trajectory.wall_time, trajectory.steps)


def planar_cell(spec: StudySpec, h: float, tau: float, reference: FeFunction) -> CellResult:
    space = FeSpace(study_mesh(spec, h), spec.p, value_dim=3)
    problem = Hmhf2dProblem(
        u0=spec.ic.field,
        T=spec.T,
        tau=tau,
        space=space,
        method=Method(spec.method),
        k=spec.k,
        fixed_point=FixedPointConfig(
            tolerance=spec.eps, max_iterations=spec.max_iterations
        ),
    )
    trajectory = solve_hmhf(problem)
    lifted = LiftedReference.from_profile(
        reference, reference_metadata(spec.ic, spec.T, spec.reference), space
    )
    l2, h1 = evaluate_against_reference(trajectory.final, lifted)
    return CellResult(
        l2, h1, trajectory.wall_time, trajectory.steps, trajectory.mean_iterations
    )


def run_cell(spec: StudySpec, value: float, reference: FeFunction) -> ErrorRow:
    """
    Solves one ladder cell and measures its error against the reference.

    Failures of the package are recorded in the row instead of raised.

    :param spec: study the cell belongs to
    :type spec: StudySpec
    :param value: ladder value of the cell
    :type value: float
    :param reference: 1D reference profile at time T
    :type reference: FeFunction
    :return: row without EOC entries
    :rtype: ErrorRow
    """
    h, tau = spec.cell(value)
    cell = radial_cell if spec.is_radial else planar_cell
    try:
        result = cell(spec, h, tau, reference)
    except HmflowException as error:
        logger.warning("%s %s=%g failed: %s", spec.name, spec.axis, value, error)
        return ErrorRow(value=value, error=type(error).__name__)
    logger.info(
        "%s %s=%g: L2=%.4e H1=%.4e (%.2fs)",
        spec.name,
        spec.axis,
        value,
        result.l2,
        result.h1,
        result.wall_time,
    )
    return ErrorRow(
        value=value,
        l2=result.l2,
        h1=result.h1,
        wall_time=result.wall_time,
        steps=result.steps,
        iterations=result.iterations,
    )


def pair_eoc(
    previous: Optional[float], current: Optional[float], values: List[float]
) -> Optional[float]:
    if previous is None or current is None or previous <= 0 or current <= 0:
        return None
    return compute_eoc([previous, current], values)[1]


def attach_eoc(spec: StudySpec, rows: List[ErrorRow]) -> List[ErrorRow]:
    """
    Adds EOC of consecutive successful rows and flags orders above the
    expected ones for quadratic PPFEM spatial ladders.
    """
    result = rows[:1]
    for before, row in zip(rows, rows[1:]):
        values = [before.value, row.value]
        update: Dict[str, Any] = {
            "eoc_l2": pair_eoc(before.l2, row.l2, values),
            "eoc_h1": pair_eoc(before.h1, row.h1, values),
        }
        if (
            spec.method == "ppfem"
            and spec.p == 2
            and spec.axis == "h"
            and update["eoc_l2"] is not None
            and update["eoc_l2"] >= SUPERCONVERGENCE_EOC
        ):
            update["flag"] = "superconvergent"
        result.append(row.model_copy(update=update))
    return result


def run_study(
    spec: StudySpec,
    reference: Optional[FeFunction] = None,
    cache: Optional[Union[str, Path]] = None,
) -> ErrorReport:
    """
    Runs all cells of a ladder and assembles the error table.

    The reference is built (or loaded from the cache) once. With more than
    one worker the cells run in a process pool; rows keep the ladder order.

    :param spec: study definition
    :type spec: StudySpec
    :param reference: 1D reference profile, built from spec.reference when missing
    :type reference: Optional[FeFunction]
    :param cache: reference cache directory
    :type cache: Optional[Union[str, Path]]
    :return: error report with EOC columns
    :rtype: ErrorReport
    """
    if reference is None:
        reference = build_reference(spec.ic, spec.T, spec.reference, cache)
    values = list(spec.ladder)
    logger.info("Study %s: %s cells, %s workers", spec.name, len(values), spec.workers)
    if spec.workers > 1 and len(values) > 1:
        with ProcessPoolExecutor(max_workers=min(spec.workers, len(values))) as pool:
            rows = list(pool.map(run_cell, repeat(spec), values, repeat(reference)))
    else:
        rows = [run_cell(spec, value, reference) for value in values]
    return ErrorReport(
        name=spec.name,
        method=spec.method,
        p=spec.p,
        k=spec.k,
        axis=spec.axis,
        fixed=spec.fixed,
        rows=attach_eoc(spec, rows),
    )
