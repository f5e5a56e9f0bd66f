"""Autocorrelation functions of quantum states in an infinite well.

Thin wrapper over the compiled ``_core`` module. States are named
``psi1``, ``psi2``, ``psi3``, ``psi4``, ``chibeta`` (needs ``beta``) and
``bloch`` (needs ``alpha``). Library errors raise ``AutocorrError`` with a
``code`` attribute matching the CLI error codes.
"""

from ._core import (
    DEFAULT_DEPTH,
    DEFAULT_TOLERANCE,
    AutocorrError,
    autocorr,
    autocorr_period,
    bloch,
    bloch_closed,
    box_count,
    coefficients,
    d_function,
    decay_exponent,
    expand_sum,
    expansion,
    linear_grid,
    log_grid,
    power_law_fit,
    riemann,
)

__all__ = [
    "DEFAULT_DEPTH",
    "DEFAULT_TOLERANCE",
    "AutocorrError",
    "autocorr",
    "autocorr_period",
    "bloch",
    "bloch_closed",
    "box_count",
    "coefficients",
    "d_function",
    "decay_exponent",
    "expand_sum",
    "expansion",
    "linear_grid",
    "log_grid",
    "power_law_fit",
    "riemann",
]
