from hmflow.fem.assembly import (
    assemble_convection_1d,
    assemble_mass,
    assemble_stiffness,
    assemble_weighted_mass,
    vectorize,
    weighted_mass_from_gradient,
)
from hmflow.fem.boundary import eliminate_dirichlet, solve_dirichlet
from hmflow.fem.lumped import LumpedMass, discrete_laplacian, lumped_mass
from hmflow.fem.norms import NormPair, error_norms, error_norms_to, h1_seminorm, l2_norm
from hmflow.fem.quadrature import QuadratureRule, interval_rule, triangle_rule
from hmflow.fem.space import FeFunction, FeSpace, evaluate, interpolate, prolong

__all__ = [
    "FeFunction",
    "FeSpace",
    "LumpedMass",
    "NormPair",
    "QuadratureRule",
    "assemble_convection_1d",
    "assemble_mass",
    "assemble_stiffness",
    "assemble_weighted_mass",
    "discrete_laplacian",
    "eliminate_dirichlet",
    "error_norms",
    "error_norms_to",
    "evaluate",
    "h1_seminorm",
    "interpolate",
    "interval_rule",
    "l2_norm",
    "lumped_mass",
    "prolong",
    "solve_dirichlet",
    "triangle_rule",
    "vectorize",
    "weighted_mass_from_gradient",
]
