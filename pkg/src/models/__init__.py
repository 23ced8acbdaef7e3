"""Data models package."""

from .dynamics import TimeFunction, TrajectorySample
from .requests import SolveRequest, SolveResponse, ValidateRequest
from .solver import (
    IterationRow,
    Monitor,
    ParameterCheck,
    RunRecord,
    RunSummary,
    SequenceRule,
    SolverConfig,
    StepsizeConfig,
    Termination,
)
from .sweep import BilinearSpec, SweepResult, SweepRow, SweepSpec

__all__ = [
    "BilinearSpec",
    "IterationRow",
    "Monitor",
    "ParameterCheck",
    "RunRecord",
    "RunSummary",
    "SequenceRule",
    "SolveRequest",
    "SolveResponse",
    "SolverConfig",
    "StepsizeConfig",
    "SweepResult",
    "SweepRow",
    "SweepSpec",
    "Termination",
    "TimeFunction",
    "TrajectorySample",
    "ValidateRequest",
]
