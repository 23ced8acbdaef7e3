"""Services package."""

from .solver_service import PreparedProblem, SolverService, solver_service
from .sweep_service import SWEEP_COLUMNS, SweepService, sweep_service

__all__ = [
    "PreparedProblem",
    "SWEEP_COLUMNS",
    "SolverService",
    "SweepService",
    "solver_service",
    "sweep_service",
]
