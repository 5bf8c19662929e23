"""
Convergence study definitions.

Spec files are flat ``key = value`` text. Lines starting with ``#`` are
comments and list values are comma separated::

    # PPFEM, linear elements, spatial ladder
    name = ppfem-h-p1
    method = ppfem
    p = 1
    k = 2
    axis = h
    ladder = 0.25, 0.125, 0.0625
    fixed = 1e-4
    T = 0.1
    ic = halfpi_r2
"""
import math
from pathlib import Path
from typing import Any, Dict, Literal, Tuple, Union

import pydantic
from pydantic import ConfigDict

from hmflow.exceptions import HmflowException, StudyDefinitionError
from hmflow.reference import InitialCondition, ReferenceConfig
from hmflow.schemes import time_steps

LIST_FIELDS = {"ladder"}
REFERENCE_PREFIX = "reference."


class StudySpec(pydantic.BaseModel):
    """
    One convergence ladder: varies tau at fixed h or h at fixed tau.

    For 1D runs h maps to N = 1/h elements, for 2D runs to the disk
    refinement level -log2(h).
    """

    model_config = ConfigDict(frozen=True)

    name: str
    method: Literal["rshmhf", "ppfem", "tfem", "bfem"]
    p: int = pydantic.Field(default=1, ge=1, le=2)
    k: int = pydantic.Field(default=1, ge=1, le=2)
    axis: Literal["tau", "h"]
    ladder: Tuple[float, ...]
    fixed: float = pydantic.Field(gt=0)
    T: float = pydantic.Field(default=0.1, gt=0)
    ic: InitialCondition = InitialCondition.HALFPI_R2
    reference: ReferenceConfig = ReferenceConfig()
    eps: float = pydantic.Field(default=1e-10, gt=0)
    max_iterations: int = pydantic.Field(default=100, ge=1)
    workers: int = pydantic.Field(default=1, ge=1)

    @pydantic.model_validator(mode="after")
    def check_ladder(self) -> "StudySpec":
        ladder = self.ladder
        if not ladder or any(value <= 0 for value in ladder):
            raise StudyDefinitionError(f"{self.name}: ladder needs positive values")
        steps = [b - a for a, b in zip(ladder, ladder[1:])]
        if not (all(s < 0 for s in steps) or all(s > 0 for s in steps)):
            raise StudyDefinitionError(f"{self.name}: ladder is not strictly monotone")
        taus = ladder if self.axis == "tau" else (self.fixed,)
        for tau in taus:
            try:
                time_steps(self.T, tau)
            except HmflowException:
                raise StudyDefinitionError(
                    f"{self.name}: tau={tau} does not divide T={self.T}"
                ) from None
        for h in self.mesh_sizes:
            if self.is_radial:
                n = 1.0 / h
                if abs(n - round(n)) > 1e-9 * n or round(n) < 2:
                    raise StudyDefinitionError(f"{self.name}: 1/h={n} is not an integer")
            else:
                level = -math.log2(h)
                if abs(level - round(level)) > 1e-9 or round(level) < 0:
                    raise StudyDefinitionError(f"{self.name}: h={h} is not a power of 1/2")
        return self

    @property
    def is_radial(self) -> bool:
        return self.method == "rshmhf"

    @property
    def mesh_sizes(self) -> Tuple[float, ...]:
        return self.ladder if self.axis == "h" else (self.fixed,)

    def cell(self, value: float) -> Tuple[float, float]:
        """
        (h, tau) of the ladder cell with the given value.
        """
        if self.axis == "h":
            return value, self.fixed
        return self.fixed, value


def parse_value(key: str, raw: str) -> Any:
    if key not in LIST_FIELDS:
        return raw
    try:
        return tuple(float(item) for item in raw.split(",") if item.strip())
    except ValueError:
        raise StudyDefinitionError(f"{key}: {raw!r} is not a list of numbers") from None


def parse_spec_text(text: str, name: str = "study") -> StudySpec:
    """
    Parses the flat key-value format into a validated spec.

    :param text: content of a spec file
    :type text: str
    :param name: default name when the file does not set one
    :type name: str
    :raises StudyDefinitionError: for malformed lines, unknown keys or invalid values
    :return: study spec
    :rtype: StudySpec
    """
    values: Dict[str, Any] = {"name": name}
    reference: Dict[str, Any] = {}
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise StudyDefinitionError(f"Line {number}: expected key = value, got {line!r}")
        key, raw = (part.strip() for part in line.split("=", 1))
        if key.startswith(REFERENCE_PREFIX):
            reference[key[len(REFERENCE_PREFIX):]] = raw
        elif key in StudySpec.model_fields:
            values[key] = parse_value(key, raw)
        else:
            raise StudyDefinitionError(f"Line {number}: unknown key {key!r}")
    try:
        if reference:
            values["reference"] = ReferenceConfig(**reference)
        return StudySpec(**values)
    except (pydantic.ValidationError, ValueError) as error:
        raise StudyDefinitionError(str(error)) from error


def parse_spec_file(path: Union[str, Path]) -> StudySpec:
    path = Path(path)
    if not path.exists():
        raise StudyDefinitionError(f"Spec file {path} does not exist")
    return parse_spec_text(path.read_text(), name=path.stem)
