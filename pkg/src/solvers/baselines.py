"""Baseline methods: forward-backward and Korpelevich extragradient."""

import logging
import time
from collections.abc import Callable

import numpy as np

from ..config import settings
from ..models import IterationRow, RunRecord, Termination
from ..operators import ForwardOracle, InclusionProblem
from ..utils.errors import UsageError
from ..vecspace import Vector

logger = logging.getLogger(__name__)

Projection = Callable[[Vector], Vector]
GapFunction = Callable[[Vector], float]


def fb_step(problem: InclusionProblem, x: Vector, lam: float) -> Vector:
    """Forward-backward step J_{lam A}(x - lam Bx)."""
    return problem.resolvent(lam, x - lam * problem.forward(x))


def extragradient_step(
    operator: ForwardOracle, project: Projection, x: Vector, lam: float
) -> Vector:
    """Extragradient step: y = P_C(x - lam Bx), then P_C(x - lam By)."""
    y = project(x - lam * operator(x))
    return project(x - lam * operator(y))


def _finish(
    method: str,
    problem: InclusionProblem,
    rows: list[IterationRow],
    termination: Termination,
    start: float,
    x: Vector,
) -> RunRecord:
    wall_time = time.perf_counter() - start
    logger.info(
        f"{method} on {problem.name} finished: {termination.value} after {len(rows)} "
        f"iterations ({wall_time:.3f}s)"
    )
    return RunRecord(
        method=method,
        problem=problem.name,
        rows=rows,
        termination=termination,
        iterations_used=len(rows),
        wall_time=wall_time,
        final_x=x.tolist(),
        final_y=x.tolist(),
    )


def run_forward_backward(
    problem: InclusionProblem,
    lam: float,
    x0: Vector,
    eps: float | None = None,
    max_iter: int | None = None,
    gap: GapFunction | None = None,
) -> RunRecord:
    """
    Iterate x_{k+1} = J_{lam A}(I - lam B) x_k until ||x_{k+1} - x_k|| <= eps.

    Convergence is only guaranteed for cocoercive B with lam in (0, 2/L); the
    runner accepts any B so that the failure on skew fields can be observed.
    """
    eps = settings.default_eps if eps is None else eps
    max_iter = settings.default_max_iter if max_iter is None else max_iter
    if lam <= 0:
        raise UsageError(f"stepsize must be positive, got {lam}")
    problem.check_point(x0)

    rows: list[IterationRow] = []
    x = x0.copy()
    termination = Termination.MAX_ITER
    start = time.perf_counter()
    for k in range(1, max_iter + 1):
        x_next = fb_step(problem, x, lam)
        if not np.all(np.isfinite(x_next)):
            termination = Termination.NUMERICAL_FAILURE
            break
        residual = float(np.linalg.norm(x_next - x))
        rows.append(
            IterationRow(
                k=k,
                residual=residual,
                lam=lam,
                gap=gap(x_next) if gap is not None else None,
                step_norm=residual,
            )
        )
        x = x_next
        if residual <= eps:
            termination = Termination.CONVERGED
            break
    return _finish("forward_backward", problem, rows, termination, start, x)


def run_extragradient(
    problem: InclusionProblem,
    x0: Vector,
    lam: float | None = None,
    eps: float | None = None,
    max_iter: int | None = None,
    gap: GapFunction | None = None,
) -> RunRecord:
    """
    Korpelevich extragradient with projection J_{lam A} until ||y_k - x_k|| <= eps.

    The default stepsize is extragradient_factor / L, inside (0, 1/(2L)). When L is
    known, an explicit stepsize outside that interval is refused.
    """
    eps = settings.default_eps if eps is None else eps
    max_iter = settings.default_max_iter if max_iter is None else max_iter
    if lam is None:
        if problem.lipschitz is None:
            raise UsageError("extragradient needs a stepsize or a Lipschitz constant")
        lam = settings.extragradient_factor / problem.lipschitz
    if lam <= 0:
        raise UsageError(f"stepsize must be positive, got {lam}")
    if problem.lipschitz is not None and lam * problem.lipschitz >= 0.5:
        raise UsageError(
            f"extragradient stepsize {lam:g} is outside (0, 1/(2L)) "
            f"for L={problem.lipschitz:g}"
        )
    problem.check_point(x0)

    def project(v: Vector) -> Vector:
        return problem.resolvent(lam, v)

    rows: list[IterationRow] = []
    x = x0.copy()
    termination = Termination.MAX_ITER
    start = time.perf_counter()
    for k in range(1, max_iter + 1):
        y = project(x - lam * problem.forward(x))
        residual = float(np.linalg.norm(y - x))
        value = gap(y) if gap is not None else None
        rows.append(IterationRow(k=k, residual=residual, lam=lam, gap=value))
        if not np.all(np.isfinite(y)):
            termination = Termination.NUMERICAL_FAILURE
            break
        if residual <= eps:
            x = y
            termination = Termination.CONVERGED
            break
        x_next = project(x - lam * problem.forward(y))
        rows[-1].step_norm = float(np.linalg.norm(x_next - x))
        x = x_next
    return _finish("extragradient", problem, rows, termination, start, x)
