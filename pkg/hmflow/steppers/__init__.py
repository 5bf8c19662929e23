from hmflow.steppers.metaclass import (
    StepperMeta,
    StepperMetaclass,
    check_compatible,
    get_stepper,
    registry,
)
from hmflow.steppers.stepper import StepResult, Stepper

__all__ = [
    "StepResult",
    "Stepper",
    "StepperMeta",
    "StepperMetaclass",
    "check_compatible",
    "get_stepper",
    "registry",
]
