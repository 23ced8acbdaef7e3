"""
Relaxed inertial forward-backward-forward iteration engine.

One step from (x_{k-1}, x_k) with stepsize lambda_k:

    z_k     = x_k + alpha_k (x_k - x_{k-1})
    y_k     = J_{lambda_k A}(z_k - lambda_k B z_k)
    t_k     = y_k - lambda_k (B y_k - B z_k)
    x_{k+1} = (1 - rho_k) z_k + rho_k t_k

followed by lambda_{k+1} from the stepsize rule. A run stops as soon as
||y_k - z_k|| <= eps, before the correction half of the step.
"""

import logging
import time
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from ..models import (
    IterationRow,
    Monitor,
    RunRecord,
    SequenceRule,
    SolverConfig,
    StepsizeConfig,
    Termination,
)
from ..operators import InclusionProblem
from ..utils.errors import UsageError
from ..vecspace import Vector
from .diagnostics import (
    delta_k,
    lyapunov_H,
    monitor_main_inequality,
    validate_params,
    warn_nonpositive_delta,
)
from .stepsize import StepsizeRule, check_lips_inequality, next_lambda

logger = logging.getLogger(__name__)

GapFunction = Callable[[Vector], float]


@dataclass(frozen=True)
class IterateState:
    """Iterates (x_{k-1}, x_k) and the stepsize lambda_k of iteration k."""

    k: int
    x_prev: Vector
    x: Vector
    lam: float


@dataclass(frozen=True)
class StepResult:
    """Outcome of one full RIFBF step."""

    next: IterateState
    y: Vector
    z: Vector
    t: Vector
    theta: float
    by: Vector
    bz: Vector


def _extrapolate_and_resolve(
    problem: InclusionProblem, state: IterateState, alpha: float
) -> tuple[Vector, Vector, Vector]:
    z = state.x + alpha * (state.x - state.x_prev)
    bz = problem.forward(z)
    y = problem.resolvent(state.lam, z - state.lam * bz)
    return z, bz, y


def _correct(
    problem: InclusionProblem,
    state: IterateState,
    rule: StepsizeRule,
    rho: float,
    z: Vector,
    bz: Vector,
    y: Vector,
) -> StepResult:
    by = problem.forward(y)
    t = y - state.lam * (by - bz)
    x_next = (1.0 - rho) * z + rho * t
    lam_next, theta = next_lambda(rule, y, z, by, bz)
    next_state = IterateState(k=state.k + 1, x_prev=state.x, x=x_next, lam=lam_next)
    return StepResult(next=next_state, y=y, z=z, t=t, theta=theta, by=by, bz=bz)


def rifbf_step(
    problem: InclusionProblem,
    state: IterateState,
    alpha: float,
    rho: float,
    rule: StepsizeRule,
) -> StepResult:
    """
    Perform one RIFBF step: two evaluations of B and one resolvent call.

    Raises:
        UsageError: If alpha is outside [0, 1) or rho is not positive
    """
    if not 0 <= alpha < 1:
        raise UsageError(f"alpha must lie in [0, 1), got {alpha}")
    if rho <= 0:
        raise UsageError(f"rho must be positive, got {rho}")
    z, bz, y = _extrapolate_and_resolve(problem, state, alpha)
    return _correct(problem, state, rule, rho, z, bz, y)


def _finite(*vectors: Vector) -> bool:
    return all(bool(np.all(np.isfinite(v))) for v in vectors)


def _prepare_rule(
    problem: InclusionProblem, config: SolverConfig
) -> tuple[StepsizeRule, float | None]:
    rule = StepsizeRule.from_config(config.stepsize)
    lipschitz = problem.lipschitz
    if rule.kind == "constant" and lipschitz is not None:
        assert rule.lam_const is not None
        if rule.lam_const * lipschitz >= 1:
            raise UsageError(
                f"constant stepsize {rule.lam_const:g} violates lambda * L < 1 "
                f"(L = {lipschitz:g})"
            )

    mu = rule.effective_mu(lipschitz)
    if mu is None:
        logger.warning(
            "Constant stepsize without a Lipschitz constant: parameter check and "
            "descent monitors are skipped"
        )
    else:
        check = validate_params(config.alpha.limit, config.rho.limit, mu)
        if not check.ok:
            raise UsageError(
                check.violation or "parameters violate the relaxation bound"
            )
    return rule, mu


def run(
    problem: InclusionProblem,
    config: SolverConfig,
    x0: Vector,
    gap: GapFunction | None = None,
    method: str = "rifbf",
) -> RunRecord:
    """
    Iterate RIFBF from x_1 = x_0 until ||y_k - z_k|| <= eps or k = max_iter.

    Args:
        problem: The inclusion problem
        config: Schedules, stepsize rule and stopping criteria
        x0: Starting point, used for both x_0 and x_1
        gap: Merit function evaluated at y_k when the gap monitor is enabled
        method: Label stored in the record

    Returns:
        RunRecord with one row per iteration; a numerical failure ends the run
        with the partial trace

    Raises:
        UsageError: If x0 does not fit the problem or the parameters are rejected
    """
    problem.check_point(x0)
    rule, mu = _prepare_rule(problem, config)

    x_star = problem.known_solution
    monitors = config.monitors
    track_gap = Monitor.GAP in monitors and gap is not None
    track_lips = Monitor.LIPS in monitors and mu is not None
    certified = x_star is not None and mu is not None
    track_main = Monitor.MAIN_INEQUALITY in monitors and certified
    track_lyapunov = Monitor.LYAPUNOV in monitors and certified

    logger.info(
        f"Starting {method} on {problem.name} (dim={problem.dim}, eps={config.eps:g}, "
        f"max_iter={config.max_iter}, stepsize={rule.kind})"
    )

    state = IterateState(k=1, x_prev=x0.copy(), x=x0.copy(), lam=rule.lam_current)
    rows: list[IterationRow] = []
    termination = Termination.MAX_ITER
    final_y: Vector | None = None
    previous_params: tuple[float, float] | None = None
    lips_failures = 0
    start = time.perf_counter()

    while True:
        k = state.k
        alpha_k, rho_k = config.alpha.at(k), config.rho.at(k)

        z, bz, y = _extrapolate_and_resolve(problem, state, alpha_k)
        if not _finite(z, bz, y):
            logger.warning(f"Non-finite values at iteration {k}; aborting run")
            termination = Termination.NUMERICAL_FAILURE
            break

        residual = float(np.linalg.norm(y - z))
        row = IterationRow(
            k=k,
            residual=residual,
            lam=state.lam,
            gap=gap(y) if track_gap else None,  # type: ignore[misc]
        )
        final_y = y

        if residual <= config.eps:
            rows.append(row)
            termination = Termination.CONVERGED
            break

        step = _correct(problem, state, rule, rho_k, z, bz, y)
        if not (_finite(step.t, step.next.x) and np.isfinite(step.theta)):
            rows.append(row)
            logger.warning(f"Non-finite values at iteration {k}; aborting run")
            termination = Termination.NUMERICAL_FAILURE
            break

        row.theta = step.theta
        row.step_norm = float(np.linalg.norm(step.next.x - state.x))
        if mu is not None:
            if track_lips:
                row.lips_ok = check_lips_inequality(
                    step.next.lam, mu, y, z, step.by, bz
                )
                lips_failures += not row.lips_ok
            if track_main:
                assert x_star is not None
                row.main_slack = monitor_main_inequality(
                    z, y, step.t, x_star, mu, step.theta
                )
            if track_lyapunov:
                assert x_star is not None
                row.lyapunov = lyapunov_H(
                    state.x, state.x_prev, x_star, alpha_k, rho_k, step.theta, mu
                )
            if previous_params is not None and rows and rows[-1].theta is not None:
                alpha_prev, rho_prev = previous_params
                rows[-1].delta = delta_k(
                    alpha_prev, alpha_k, rho_prev, rho_k, rows[-1].theta, step.theta, mu
                )
        rows.append(row)
        previous_params = (alpha_k, rho_k)

        if k % 1000 == 0:
            logger.debug(
                f"{method} k={k}: residual={residual:.3e}, lambda={state.lam:.6g}"
            )

        state = step.next
        if k >= config.max_iter:
            break

    wall_time = time.perf_counter() - start

    if lips_failures:
        logger.warning(f"Stepsize inequality failed at {lips_failures} iterations")
    if mu is not None:
        warn_nonpositive_delta(rows, mu)
    _check_adaptive_floor(problem, rule, rows)

    logger.info(
        f"{method} on {problem.name} finished: {termination.value} after {len(rows)} "
        f"iterations (residual={rows[-1].residual if rows else float('nan'):.3e}, "
        f"{wall_time:.3f}s)"
    )

    return RunRecord(
        method=method,
        problem=problem.name,
        rows=rows,
        termination=termination,
        iterations_used=len(rows),
        wall_time=wall_time,
        mu=mu,
        final_x=state.x.tolist(),
        final_y=final_y.tolist() if final_y is not None else None,
    )


def _check_adaptive_floor(
    problem: InclusionProblem, rule: StepsizeRule, rows: list[IterationRow]
) -> None:
    """Warn when adaptive stepsizes drop below min{lambda1, mu / L} for the known L."""
    if rule.kind != "adaptive" or not rows:
        return
    lipschitz = problem.lipschitz or problem.lipschitz_estimate
    if lipschitz is None:
        return
    assert rule.mu is not None and rule.lambda1 is not None
    floor = min(rule.lambda1, rule.mu / lipschitz)
    smallest = min(row.lam for row in rows)
    if smallest < floor * (1 - 1e-12):
        logger.warning(
            f"Adaptive stepsize {smallest:.6g} fell below "
            f"min(lambda1, mu/L) = {floor:.6g}"
        )


def ifbf_config(alpha: float, stepsize: StepsizeConfig, **kwargs) -> SolverConfig:
    """Inertial FBF: rho_k = 1."""
    return SolverConfig(
        alpha=SequenceRule.constant(alpha),
        rho=SequenceRule.constant(1.0),
        stepsize=stepsize,
        **kwargs,
    )


def rfbf_config(rho: float, stepsize: StepsizeConfig, **kwargs) -> SolverConfig:
    """Relaxed FBF: alpha_k = 0."""
    return SolverConfig(
        alpha=SequenceRule.constant(0.0),
        rho=SequenceRule.constant(rho),
        stepsize=stepsize,
        **kwargs,
    )


def fbf_config(stepsize: StepsizeConfig, **kwargs) -> SolverConfig:
    """Tseng's forward-backward-forward method: alpha_k = 0, rho_k = 1."""
    return SolverConfig(
        alpha=SequenceRule.constant(0.0),
        rho=SequenceRule.constant(1.0),
        stepsize=stepsize,
        **kwargs,
    )
