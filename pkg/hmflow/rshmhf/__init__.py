from hmflow.rshmhf.export import ReferenceMetadata, read_reference, write_reference
from hmflow.rshmhf.problem import Rshmhf1dProblem
from hmflow.rshmhf.solver import (
    RadialStepper,
    RadialTrajectory,
    energy_1d,
    extrapolate_1d,
    rshmhf_step,
    sinc,
    solve_rshmhf,
)

__all__ = [
    "RadialStepper",
    "RadialTrajectory",
    "ReferenceMetadata",
    "Rshmhf1dProblem",
    "energy_1d",
    "extrapolate_1d",
    "read_reference",
    "rshmhf_step",
    "sinc",
    "solve_rshmhf",
    "write_reference",
]
