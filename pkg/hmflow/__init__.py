from hmflow.decorators import post_solve, post_step, pre_solve, receiver
from hmflow.exceptions import (  # noqa: I100
    DegenerateElementError,
    DegenerateExtrapolationError,
    FixedPointDivergenceError,
    HmflowException,
    InfSupError,
    InvalidArgumentError,
    NormalizationError,
    OutOfDomainError,
    UnsupportedDegreeError,
    UnsupportedSchemeError,
)
from hmflow.fem import FeFunction, FeSpace, error_norms, interpolate  # noqa: I100
from hmflow.mesh import DiskMesh, IntervalMesh, build_disk_mesh, build_interval_mesh
from hmflow.protocols import ProblemProtocol
from hmflow.reference import InitialCondition, build_reference, spherical_lift
from hmflow.rshmhf import Rshmhf1dProblem, solve_rshmhf
from hmflow.schemes import BdfScheme
from hmflow.signals import Signal
from hmflow.solvers import FixedPointConfig, Hmhf2dProblem, Method, solve_hmhf
from hmflow.steppers import Stepper, get_stepper
from hmflow.studies import StudySpec, compare_methods, compute_eoc, run_study

__version__ = "0.1.0"
__all__ = [
    "BdfScheme",
    "DegenerateElementError",
    "DegenerateExtrapolationError",
    "DiskMesh",
    "FeFunction",
    "FeSpace",
    "FixedPointConfig",
    "FixedPointDivergenceError",
    "HmflowException",
    "Hmhf2dProblem",
    "InfSupError",
    "InitialCondition",
    "IntervalMesh",
    "InvalidArgumentError",
    "Method",
    "NormalizationError",
    "OutOfDomainError",
    "ProblemProtocol",
    "Rshmhf1dProblem",
    "Signal",
    "Stepper",
    "StudySpec",
    "UnsupportedDegreeError",
    "UnsupportedSchemeError",
    "build_disk_mesh",
    "build_interval_mesh",
    "build_reference",
    "compare_methods",
    "compute_eoc",
    "error_norms",
    "get_stepper",
    "interpolate",
    "post_solve",
    "post_step",
    "pre_solve",
    "receiver",
    "run_study",
    "solve_hmhf",
    "solve_rshmhf",
    "spherical_lift",
]
