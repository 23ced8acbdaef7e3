"""API routes for solver, validation and sweep endpoints."""

import logging

from fastapi import APIRouter, HTTPException

from ..config import settings
from ..models import (
    ParameterCheck,
    SolveRequest,
    SolveResponse,
    SweepResult,
    SweepSpec,
    ValidateRequest,
)
from ..services import solver_service, sweep_service
from ..utils.errors import NumericalFailureError, UsageError

logger = logging.getLogger(__name__)

# Create API router
router = APIRouter(prefix=settings.api_prefix, tags=["solvers"])


@router.get("/health")
async def health_check():
    """Health check endpoint."""
    return {"status": "healthy", "service": "rifbf-solver"}


@router.post("/validate", response_model=ParameterCheck)
async def validate_parameters(request: ValidateRequest):
    """Check a limiting (alpha, rho, mu) triple against the relaxation bound."""
    try:
        return solver_service.validate(request.alpha, request.rho, request.mu)
    except UsageError as e:
        logger.error(f"Invalid parameters {request}: {str(e)}")
        raise HTTPException(status_code=400, detail=f"Invalid parameter: {str(e)}")


@router.post("/solve", response_model=SolveResponse)
async def solve(request: SolveRequest):
    """
    Run one solver configuration on a generated problem.

    Returns the run summary and, with ``include_trace``, the per-iteration trace:
    - residual ||y_k - z_k|| and stepsize lambda_k
    - theta_k, delta_k and the Lyapunov value when a solution is known
    - the saddle gap at y_k for bilinear problems
    """
    try:
        logger.info(
            f"Processing solve request for {request.problem} ({request.method})"
        )
        return await solver_service.solve_async(request)

    except UsageError as e:
        raise HTTPException(status_code=400, detail=f"Invalid parameter: {str(e)}")

    except NumericalFailureError as e:
        logger.error(f"Numerical failure: {str(e)}")
        raise HTTPException(status_code=422, detail=str(e))

    except Exception as e:
        logger.error(f"Unexpected error solving {request.problem}: {str(e)}")
        raise HTTPException(
            status_code=500,
            detail="Internal server error occurred while processing request",
        )


@router.post("/sweep", response_model=SweepResult)
async def sweep(spec: SweepSpec):
    """Run a parameter grid; infeasible cells come back with status ``skipped``."""
    try:
        logger.info(f"Processing sweep request with {spec.cell_count} cells")
        return await sweep_service.run_sweep(spec)

    except UsageError as e:
        logger.error(f"Invalid sweep: {str(e)}")
        raise HTTPException(status_code=400, detail=f"Invalid parameter: {str(e)}")

    except Exception as e:
        logger.error(f"Unexpected error in sweep: {str(e)}")
        raise HTTPException(
            status_code=500,
            detail="Internal server error occurred while processing request",
        )
