import hashlib
import logging
import os
from pathlib import Path
from typing import Optional, Union

import orjson
import pydantic
from pydantic import ConfigDict

from hmflow.fem import FeFunction, FeSpace
from hmflow.mesh import build_interval_mesh
from hmflow.reference.initial import InitialCondition
from hmflow.rshmhf import (
    ReferenceMetadata,
    Rshmhf1dProblem,
    read_reference,
    solve_rshmhf,
    write_reference,
)

logger = logging.getLogger(__name__)

CACHE_ENV = "HMFLOW_CACHE_DIR"
DEFAULT_CACHE_DIR = ".hmflow_cache"


class ReferenceConfig(pydantic.BaseModel):
    """
    Discretization of the 1D reference runs, fine enough to stay well below
    the errors measured on the ladders.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int = pydantic.Field(default=2 ** 12, ge=2)
    p: int = pydantic.Field(default=2, ge=1, le=2)
    tau: float = pydantic.Field(default=1e-5, gt=0)
    k: int = pydantic.Field(default=2, ge=1, le=2)


def cache_dir(path: Optional[Union[str, Path]] = None) -> Path:
    return Path(path or os.environ.get(CACHE_ENV, DEFAULT_CACHE_DIR))


def cache_key(ic: InitialCondition, T: float, config: ReferenceConfig) -> str:
    payload = orjson.dumps(
        {"ic": ic.value, "T": T, **config.model_dump()}, option=orjson.OPT_SORT_KEYS
    )
    return hashlib.sha1(payload).hexdigest()[:16]


def build_reference(
    ic: Union[InitialCondition, str],
    T: float,
    config: Optional[ReferenceConfig] = None,
    directory: Optional[Union[str, Path]] = None,
    use_cache: bool = True,
) -> FeFunction:
    """
    Solves the radial problem on the reference discretization, reusing a
    cached solution when the same run was done before.

    :param ic: initial profile
    :type ic: Union[InitialCondition, str]
    :param T: final time
    :type T: float
    :param config: reference discretization, defaults to ReferenceConfig()
    :type config: Optional[ReferenceConfig]
    :param directory: cache directory, defaults to $HMFLOW_CACHE_DIR or .hmflow_cache
    :type directory: Optional[Union[str, Path]]
    :param use_cache: read and write the cache
    :type use_cache: bool
    :return: reference profile at time T
    :rtype: FeFunction
    """
    ic = InitialCondition(ic)
    config = config or ReferenceConfig()
    path = cache_dir(directory) / f"reference-{ic.value}-{cache_key(ic, T, config)}.txt"
    if use_cache and path.exists():
        solution, _ = read_reference(path)
        logger.debug("Reference loaded from %s", path)
        return solution

    space = FeSpace(build_interval_mesh(config.n), config.p)
    problem = Rshmhf1dProblem(u0=ic.profile, T=T, tau=config.tau, space=space, name=ic.value)
    logger.info(
        "Building reference %s: p=%s n=%s tau=%.1e T=%s BDF%s",
        ic.value,
        config.p,
        config.n,
        config.tau,
        T,
        config.k,
    )
    solution = solve_rshmhf(problem, config.k).final
    if use_cache:
        path.parent.mkdir(parents=True, exist_ok=True)
        write_reference(path, solution, reference_metadata(ic, T, config))
    return solution


def reference_metadata(
    ic: Union[InitialCondition, str], T: float, config: ReferenceConfig
) -> ReferenceMetadata:
    return ReferenceMetadata(
        p=config.p,
        n=config.n,
        h=1.0 / config.n,
        tau=config.tau,
        T=T,
        k=config.k,
        ic=InitialCondition(ic).value,
    )
