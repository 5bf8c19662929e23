import logging
from typing import Any, Dict, TYPE_CHECKING, Tuple, Type

from hmflow.exceptions import (
    StepperDefinitionError,
    UnsupportedDegreeError,
    UnsupportedSchemeError,
)
from hmflow.signals import Signal, SignalEmitter

if TYPE_CHECKING:  # pragma no cover
    from hmflow.steppers.stepper import Stepper

logger = logging.getLogger(__name__)

registry: Dict[str, Type["Stepper"]] = dict()


class StepperMeta:
    """
    Class-level description of a time stepper, filled from the inner Meta
    class of every concrete stepper.
    """

    name: str
    orders: Tuple[int, ...]
    degrees: Tuple[int, ...]
    dimension: int
    signals: SignalEmitter
    abstract: bool


def meta_field_not_set(stepper: Type["Stepper"], field_name: str) -> bool:
    return not hasattr(stepper.Meta, field_name)


def populate_default_options_values(stepper: Type["Stepper"]) -> None:
    if meta_field_not_set(stepper=stepper, field_name="orders"):
        stepper.Meta.orders = (1, 2)
    if meta_field_not_set(stepper=stepper, field_name="degrees"):
        stepper.Meta.degrees = (1, 2)
    if meta_field_not_set(stepper=stepper, field_name="dimension"):
        stepper.Meta.dimension = 2


def check_meta_validity(name: str, stepper: Type["Stepper"]) -> None:
    meta = stepper.Meta
    if not isinstance(getattr(meta, "name", None), str) or not meta.name:
        raise StepperDefinitionError(f"Stepper {name} needs a non empty Meta.name")
    orders = tuple(meta.orders)
    if not orders or not set(orders) <= {1, 2}:
        raise StepperDefinitionError(
            f"Stepper {name} declares unsupported BDF orders {orders}"
        )
    degrees = tuple(meta.degrees)
    if not degrees or not set(degrees) <= {1, 2}:
        raise StepperDefinitionError(
            f"Stepper {name} declares unsupported degrees {degrees}"
        )
    if meta.dimension not in (1, 2):
        raise StepperDefinitionError(f"Stepper {name} has to work in 1D or 2D")
    meta.orders, meta.degrees = orders, degrees


def register_signals(stepper: Type["Stepper"]) -> None:
    if meta_field_not_set(stepper=stepper, field_name="signals"):
        signals = SignalEmitter()
        signals.pre_solve = Signal()
        signals.post_step = Signal()
        signals.post_solve = Signal()
        stepper.Meta.signals = signals


def register_stepper(stepper: Type["Stepper"]) -> None:
    name = stepper.Meta.name
    registered = registry.get(name)
    if registered is not None and registered.__qualname__ != stepper.__qualname__:
        raise StepperDefinitionError(
            f"Stepper name {name} already used by {registered.__qualname__}"
        )
    if registered is not None:
        logger.warning("Stepper %s re-registered", name)
    registry[name] = stepper


class StepperMetaclass(type):
    def __new__(  # type: ignore
        mcs: "StepperMetaclass", name: str, bases: Any, attrs: dict
    ) -> "StepperMetaclass":
        new_stepper = super().__new__(mcs, name, bases, attrs)
        meta = attrs.get("Meta")
        if meta is None:
            if any(isinstance(base, StepperMetaclass) for base in bases):
                raise StepperDefinitionError(f"Stepper {name} has no Meta class")
            return new_stepper  # pragma: no cover
        if getattr(meta, "abstract", False):
            return new_stepper
        meta.abstract = False
        populate_default_options_values(new_stepper)
        check_meta_validity(name, new_stepper)
        register_signals(new_stepper)
        register_stepper(new_stepper)
        return new_stepper


def get_stepper(name: str) -> Type["Stepper"]:
    """
    Looks up a registered stepper class by its Meta.name.

    :param name: method id, like "ppfem" or "rshmhf"
    :type name: str
    :raises StepperDefinitionError: for unknown names
    :return: stepper class
    :rtype: Type["Stepper"]
    """
    try:
        return registry[name]
    except KeyError:
        raise StepperDefinitionError(
            f"Unknown stepper {name}, registered: {sorted(registry)}"
        ) from None


def check_compatible(stepper: Type["Stepper"], degree: int, order: int) -> None:
    meta = stepper.Meta
    if degree not in meta.degrees:
        raise UnsupportedDegreeError(
            f"{meta.name} supports degrees {meta.degrees}, got {degree}"
        )
    if order not in meta.orders:
        raise UnsupportedSchemeError(
            f"{meta.name} supports BDF orders {meta.orders}, got {order}"
        )
