from hmflow.solvers.bfem import BfemStepper, bfem_step
from hmflow.solvers.export import write_snapshot, write_vtk
from hmflow.solvers.extrapolation import extrapolate_2d_normalized, normalize_nodal
from hmflow.solvers.flow import Trajectory, initial_field, solve_hmhf
from hmflow.solvers.operators import FlowOperators
from hmflow.solvers.ppfem import PpfemStepper, ppfem_step
from hmflow.solvers.problem import (
    FixedPointConfig,
    Hmhf2dProblem,
    Method,
    default_bfem_tau,
)
from hmflow.solvers.tfem import (
    TfemStep,
    TfemStepper,
    constraint_mass_matrices,
    constraint_matrix,
    inf_sup_constant,
    tfem_step,
)

__all__ = [
    "BfemStepper",
    "FixedPointConfig",
    "FlowOperators",
    "Hmhf2dProblem",
    "Method",
    "PpfemStepper",
    "TfemStep",
    "TfemStepper",
    "Trajectory",
    "bfem_step",
    "constraint_mass_matrices",
    "constraint_matrix",
    "default_bfem_tau",
    "extrapolate_2d_normalized",
    "inf_sup_constant",
    "initial_field",
    "normalize_nodal",
    "ppfem_step",
    "solve_hmhf",
    "tfem_step",
    "write_snapshot",
    "write_vtk",
]
