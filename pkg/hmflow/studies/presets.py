"""
Named convergence studies for every method, order and degree, sized to
run on a workstation: 1D ladders at h = 2^-10 or tau = 1e-5, 2D temporal
ladders on refinement level 4 and 2D spatial ladders over levels 2 to 4.
"""
from typing import Dict, Tuple

from hmflow.exceptions import StudyDefinitionError
from hmflow.studies.spec import StudySpec

TAU_LADDER: Tuple[float, ...] = (5e-2, 2.5e-2, 1.25e-2, 6.25e-3, 3.125e-3)
RADIAL_H_LADDER: Tuple[float, ...] = (2 ** -3, 2 ** -4, 2 ** -5, 2 ** -6)
DISK_H_LADDER: Tuple[float, ...] = (2 ** -2, 2 ** -3, 2 ** -4)
RADIAL_FIXED_H = 2 ** -10
DISK_FIXED_H = 2 ** -4
RADIAL_FIXED_TAU = 1e-5
DISK_FIXED_TAU = 1e-4
BFEM_FIXED_TAU = 1e-5


def temporal(name: str, method: str, p: int, k: int) -> StudySpec:
    fixed = RADIAL_FIXED_H if method == "rshmhf" else DISK_FIXED_H
    return StudySpec(
        name=name, method=method, p=p, k=k, axis="tau", ladder=TAU_LADDER, fixed=fixed
    )


def spatial(name: str, method: str, p: int, k: int) -> StudySpec:
    if method == "rshmhf":
        ladder, fixed = RADIAL_H_LADDER, RADIAL_FIXED_TAU
    else:
        ladder = DISK_H_LADDER
        fixed = BFEM_FIXED_TAU if method == "bfem" else DISK_FIXED_TAU
    return StudySpec(name=name, method=method, p=p, k=k, axis="h", ladder=ladder, fixed=fixed)


PRESETS: Dict[str, StudySpec] = {
    spec.name: spec
    for spec in (
        temporal("rshmhf-tau-p2-bdf1", "rshmhf", p=2, k=1),
        temporal("rshmhf-tau-p2-bdf2", "rshmhf", p=2, k=2),
        spatial("rshmhf-h-p1-bdf2", "rshmhf", p=1, k=2),
        spatial("rshmhf-h-p2-bdf2", "rshmhf", p=2, k=2),
        temporal("ppfem-tau-p2-bdf1", "ppfem", p=2, k=1),
        temporal("ppfem-tau-p2-bdf2", "ppfem", p=2, k=2),
        spatial("ppfem-h-p1-bdf2", "ppfem", p=1, k=2),
        spatial("ppfem-h-p2-bdf2", "ppfem", p=2, k=2),
        temporal("tfem-tau-p2-bdf1", "tfem", p=2, k=1),
        temporal("tfem-tau-p2-bdf2", "tfem", p=2, k=2),
        spatial("tfem-h-p1-bdf2", "tfem", p=1, k=2),
        spatial("tfem-h-p2-bdf2", "tfem", p=2, k=2),
        spatial("bfem-h-p1-bdf1", "bfem", p=1, k=1),
    )
}

# table1 .. table13 in the order the presets are listed above
TABLE_ALIASES: Dict[str, str] = {
    f"table{index}": name for index, name in enumerate(PRESETS, start=1)
}


def get_preset(name: str) -> StudySpec:
    """
    Looks up a named study.

    :raises StudyDefinitionError: for unknown names
    """
    try:
        return PRESETS[TABLE_ALIASES.get(name, name)]
    except KeyError:
        raise StudyDefinitionError(
            f"Unknown preset {name!r}, choose one of {', '.join(PRESETS)} "
            f"or table1 .. table{len(TABLE_ALIASES)}"
        ) from None
