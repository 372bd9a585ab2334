"""Word-series averaging of a vibrated bistable oscillator."""

from ._wordavg import (
    NumericalError,
    ValidationError,
    averaged_text,
    beta_bar,
    census,
    coefficients,
    errors,
    potential,
)

__all__ = [
    "NumericalError",
    "ValidationError",
    "averaged_text",
    "beta_bar",
    "census",
    "coefficients",
    "errors",
    "potential",
]
