"""Continuous-time dynamics package."""

from .assumption import AssumptionReport, check_assumption
from .discretize import discretize_to_rifbf
from .system import (
    DynamicsConfig,
    Trajectory,
    euler_step,
    integrate,
    observed_order,
    rk4_step,
)

__all__ = [
    "AssumptionReport",
    "DynamicsConfig",
    "Trajectory",
    "check_assumption",
    "discretize_to_rifbf",
    "euler_step",
    "integrate",
    "observed_order",
    "rk4_step",
]
