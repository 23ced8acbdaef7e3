"""Grid check of the damping/relaxation conditions on (gamma, tau)."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass

from ..models import TimeFunction
from ..utils.errors import UsageError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AssumptionReport:
    """
    Outcome of check_assumption.

    ``margin`` is theta = kappa * inf(gamma^2 / tau) - 1 over the grid.
    """

    ok: bool
    margin: float
    violation: str | None = None
    violation_time: float | None = None


def _derivatives(f: TimeFunction, grid: Sequence[float]) -> list[tuple[float, float]]:
    if f.analytic:
        return [(t, f.derivative(t)) for t in grid]
    return [
        (t0, (f.value(t1) - f.value(t0)) / (t1 - t0))
        for t0, t1 in zip(grid, grid[1:])
    ]


def check_assumption(
    gamma: TimeFunction, tau: TimeFunction, kappa: float, grid: Sequence[float]
) -> AssumptionReport:
    """
    Check gamma' <= 0 <= tau' and gamma^2 / tau >= (1 + theta) / kappa with theta > 0.

    Args:
        gamma: Damping
        tau: Relaxation
        kappa: Coercivity modulus of M, in (0, 1]
        grid: Increasing sample times

    Returns:
        AssumptionReport; the first violation in time order is reported

    Raises:
        UsageError: If kappa is out of range, the grid is empty or tau vanishes on it
    """
    if not 0 < kappa <= 1:
        raise UsageError(f"kappa must lie in (0, 1], got {kappa}")
    if not grid:
        raise UsageError("assumption check needs a nonempty time grid")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise UsageError("time grid must be strictly increasing")

    ratios = []
    for t in grid:
        tau_t = tau.value(t)
        if tau_t == 0.0:
            raise UsageError(f"tau vanishes at t = {t:g}")
        ratios.append((t, gamma.value(t) ** 2 / tau_t))
    margin = kappa * min(ratio for _, ratio in ratios) - 1.0

    candidates: list[tuple[float, str]] = []
    for t, slope in _derivatives(gamma, grid):
        if slope > 0:
            candidates.append((t, f"gamma increases at t = {t:g} (slope {slope:g})"))
            break
    for t, slope in _derivatives(tau, grid):
        if slope < 0:
            candidates.append((t, f"tau decreases at t = {t:g} (slope {slope:g})"))
            break
    if margin <= 0:
        t = next(t for t, ratio in ratios if kappa * ratio - 1.0 <= 0)
        candidates.append(
            (t, f"kappa * gamma^2 / tau <= 1 at t = {t:g} (margin {margin:.6g})")
        )

    if not candidates:
        return AssumptionReport(ok=True, margin=margin)
    violation_time, violation = min(candidates, key=lambda item: item[0])
    return AssumptionReport(
        ok=False, margin=margin, violation=violation, violation_time=violation_time
    )
