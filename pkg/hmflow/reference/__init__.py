from hmflow.reference.build import (
    ReferenceConfig,
    build_reference,
    cache_dir,
    reference_metadata,
)
from hmflow.reference.initial import InitialCondition
from hmflow.reference.lift import (
    LiftedReference,
    evaluate_against_reference,
    spherical_lift,
    spherical_map,
)

__all__ = [
    "InitialCondition",
    "LiftedReference",
    "ReferenceConfig",
    "build_reference",
    "cache_dir",
    "evaluate_against_reference",
    "reference_metadata",
    "spherical_lift",
    "spherical_map",
]
