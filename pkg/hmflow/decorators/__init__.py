"""
Module with all decorators that are exposed for users.

Currently only predefined signal decorators fired by the time loops
(pre_solve, post_step, post_solve) and the generic receiver.

"""
from hmflow.decorators.signals import (
    post_solve,
    post_step,
    pre_solve,
    receiver,
)

__all__ = [
    "post_solve",
    "post_step",
    "pre_solve",
    "receiver",
]
