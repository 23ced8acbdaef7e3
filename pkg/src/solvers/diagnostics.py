"""
Parameter validation and the descent quantities monitored along RIFBF runs.

The Lyapunov quantity H_k and the coefficient delta_k are evaluated with the
stepsize ratio theta_k = lambda_k / lambda_{k+1} of the same iteration.
"""

import logging
from collections.abc import Sequence

import numpy as np

from ..config import settings
from ..models import IterationRow, ParameterCheck
from ..utils.errors import UsageError
from ..vecspace import Vector

logger = logging.getLogger(__name__)


def rho_bound(alpha: float, mu: float) -> float:
    """
    Supremum of admissible relaxation.

    (2 / (1 + mu)) (1 - alpha)^2 / (2 alpha^2 - alpha + 1)
    """
    if not 0 <= alpha < 1:
        raise UsageError(f"alpha must lie in [0, 1), got {alpha}")
    if not 0 <= mu < 1:
        raise UsageError(f"mu must lie in [0, 1), got {mu}")
    return 2.0 / (1.0 + mu) * (1.0 - alpha) ** 2 / (2.0 * alpha**2 - alpha + 1.0)


def validate_params(alpha: float, rho: float, mu: float) -> ParameterCheck:
    """
    Check the limiting parameters against the inertia/relaxation trade-off.

    Raises:
        UsageError: If alpha or mu lie outside [0, 1) or rho is not positive
    """
    if rho <= 0:
        raise UsageError(f"rho must be positive, got {rho}")
    bound = rho_bound(alpha, mu)
    if rho < bound:
        return ParameterCheck(ok=True, bound=bound)
    return ParameterCheck(
        ok=False,
        bound=bound,
        violation=(
            f"rho = {rho:g} is not below the bound {bound:.6g} "
            f"for alpha = {alpha:g}, mu = {mu:g}"
        ),
    )


def limiting_delta(alpha: float, rho: float, mu: float) -> float:
    """Limit of delta_k for constant (alpha, rho) and theta_k -> 1."""
    return 2.0 * (1.0 - alpha) ** 2 / (rho * (1.0 + mu)) - 1.0 + alpha - 2.0 * alpha**2


def _inertial_weight(alpha: float, rho: float, theta: float, mu: float) -> float:
    return 2.0 * alpha * (alpha + (1.0 - alpha) / (rho * (1.0 + mu * theta)))


def delta_k(
    alpha_k: float,
    alpha_next: float,
    rho_k: float,
    rho_next: float,
    theta_k: float,
    theta_next: float,
    mu: float,
) -> float:
    """Descent coefficient delta_k of H_{k+1} - H_k <= -delta_k ||x_{k+1} - x_k||^2."""
    own = (1.0 - alpha_k) * (2.0 / (rho_k * (1.0 + mu * theta_k)) - 1.0)
    return own - _inertial_weight(alpha_next, rho_next, theta_next, mu)


def lyapunov_H(
    x_k: Vector,
    x_prev: Vector,
    x_star: Vector,
    alpha_k: float,
    rho_k: float,
    theta_k: float,
    mu: float,
) -> float:
    """H_k = ||x_k - x*||^2 - alpha_k ||x_{k-1} - x*||^2 + w_k ||x_k - x_{k-1}||^2."""
    dist = float(np.sum((x_k - x_star) ** 2))
    dist_prev = float(np.sum((x_prev - x_star) ** 2))
    step = float(np.sum((x_k - x_prev) ** 2))
    weight = _inertial_weight(alpha_k, rho_k, theta_k, mu)
    return dist - alpha_k * dist_prev + weight * step


def monitor_main_inequality(
    z: Vector, y: Vector, t: Vector, x_star: Vector, mu: float, theta_k: float
) -> float:
    """
    Slack of the main inequality, nonnegative in exact arithmetic.

    ||z - x*||^2 - (1 - mu^2 theta^2) ||y - z||^2 - ||t - x*||^2
    """
    rhs = float(np.sum((z - x_star) ** 2)) - (1.0 - mu**2 * theta_k**2) * float(
        np.sum((y - z) ** 2)
    )
    return rhs - float(np.sum((t - x_star) ** 2))


def detect_k0(thetas: Sequence[float | None], mu: float) -> int | None:
    """
    First iteration index with mu^2 theta_k^2 < (1 + mu^2) / 2.

    Args:
        thetas: theta_k for k = 1, 2, ... (None where undefined)
        mu: Stepsize factor

    Returns:
        The index k0, or None if no defined theta meets the threshold
    """
    threshold = (1.0 + mu**2) / 2.0
    for k, theta in enumerate(thetas, start=1):
        if theta is not None and mu**2 * theta**2 < threshold:
            return k
    return None


def _audit_start(rows: Sequence[IterationRow], mu: float) -> int:
    """k0 for the trace, or its first index with a warning when none exists."""
    k0 = detect_k0([row.theta for row in rows], mu)
    if k0 is None:
        first = rows[0].k if rows else 1
        logger.warning(
            f"No k0 with mu^2 theta_k^2 < (1 + mu^2) / 2 for mu={mu}; "
            f"auditing from k={first}"
        )
        return first
    return k0


def descent_violations(
    rows: Sequence[IterationRow], mu: float, slack: float | None = None
) -> list[int]:
    """
    Iterations k >= k0 at which H_{k+1} - H_k > -delta_k ||x_{k+1} - x_k||^2 + slack.

    Rows need the lyapunov, delta and step_norm columns. A trace without k0 is
    audited from its first row.
    """
    slack = settings.monitor_slack if slack is None else slack
    k0 = _audit_start(rows, mu)

    violations = []
    for row, following in zip(rows, rows[1:]):
        if row.k < k0:
            continue
        if row.lyapunov is None or following.lyapunov is None:
            continue
        if row.delta is None or row.step_norm is None:
            continue
        if following.lyapunov - row.lyapunov > -row.delta * row.step_norm**2 + slack:
            violations.append(row.k)
    return violations


def main_inequality_violations(
    rows: Sequence[IterationRow], slack: float | None = None
) -> list[int]:
    """Iterations whose main-inequality slack is below -slack."""
    slack = settings.monitor_slack if slack is None else slack
    return [
        row.k
        for row in rows
        if row.main_slack is not None and row.main_slack < -slack
    ]


def summed_descent(rows: Sequence[IterationRow]) -> float:
    """Partial sum of delta_k ||x_{k+1} - x_k||^2 over the trace."""
    return float(
        sum(
            row.delta * row.step_norm**2
            for row in rows
            if row.delta is not None and row.step_norm is not None
        )
    )


def warn_nonpositive_delta(rows: Sequence[IterationRow], mu: float) -> list[int]:
    """Log a warning for every k >= k0 with delta_k <= 0 and return those indices."""
    k0 = _audit_start(rows, mu)
    offending = [
        row.k
        for row in rows
        if row.k >= k0 and row.delta is not None and row.delta <= 0
    ]
    if offending:
        logger.warning(
            f"delta_k <= 0 at {len(offending)} iterations after k0={k0} "
            f"(first at k={offending[0]})"
        )
    return offending


def feasible_grid(
    alphas: Sequence[float], rhos: Sequence[float], mu: float, margin: float = 0.0
) -> list[tuple[float, float]]:
    """(alpha, rho) cells with rho below the relaxation bound by over ``margin``."""
    return [
        (alpha, rho)
        for alpha in alphas
        for rho in rhos
        if rho < rho_bound(alpha, mu) - margin
    ]


def lips_violations(rows: Sequence[IterationRow]) -> list[int]:
    """Iterations at which ||By - Bz|| <= (mu / lambda_{k+1}) ||y - z|| failed."""
    return [row.k for row in rows if row.lips_ok is False]
