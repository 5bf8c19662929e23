from hmflow.schemes.bdf import (
    BdfScheme,
    bdf_coefficients,
    extrapolate,
    history_sum,
    time_steps,
)

__all__ = ["BdfScheme", "bdf_coefficients", "extrapolate", "history_sum", "time_steps"]
