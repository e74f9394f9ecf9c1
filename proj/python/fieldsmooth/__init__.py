"""Deterministic LP-based smoothing of agricultural coverage plans."""

from fieldsmooth._core import (
    min_turn_radius,
    plan,
    plan_to_files,
    regression_contour,
    saturated_envelope,
    sweep_radius,
)

__all__ = [
    "min_turn_radius",
    "plan",
    "plan_to_files",
    "regression_contour",
    "saturated_envelope",
    "sweep_radius",
]
