"""
Fixed-step simulation of the second-order system

    x''(t) + gamma(t) x'(t) + tau(t) Mx(t) = 0,  x(0) = x0,  x'(0) = v0,

written as the first-order system (x, v)' = (v, -gamma v - tau Mx).
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from ..models import TimeFunction, TrajectorySample
from ..operators import InclusionProblem, fbf_residual_M
from ..utils.errors import UsageError
from ..vecspace import Vector

logger = logging.getLogger(__name__)

Integrator = Literal["euler", "rk4"]
VectorField = Callable[[float, Vector], Vector]


@dataclass(frozen=True)
class DynamicsConfig:
    gamma: TimeFunction
    tau: TimeFunction
    lam: float
    x0: Vector
    v0: Vector
    horizon: float
    dt: float
    integrator: Integrator = "rk4"
    sample_every: int = 1

    def __post_init__(self):
        if self.dt <= 0:
            raise UsageError(f"time step must be positive, got {self.dt}")
        if self.horizon < self.dt:
            raise UsageError(
                f"horizon {self.horizon} is shorter than the step {self.dt}"
            )
        if self.lam <= 0:
            raise UsageError(f"lambda must be positive, got {self.lam}")
        if self.x0.shape != self.v0.shape:
            raise UsageError(
                f"x0 and v0 shapes differ: {self.x0.shape}, {self.v0.shape}"
            )
        if self.sample_every < 1:
            raise UsageError(
                f"sample_every must be at least 1, got {self.sample_every}"
            )
        if self.integrator not in ("euler", "rk4"):
            raise UsageError(f"unknown integrator {self.integrator!r}")

    @property
    def steps(self) -> int:
        """Number of steps; t_j = j * dt up to the horizon rounded to the grid."""
        return max(1, int(round(self.horizon / self.dt)))


@dataclass
class Trajectory:
    """Sampled states with ||x'||, ||Mx|| and ||x - y|| at each sample."""

    times: list[float] = field(default_factory=list)
    states: list[Vector] = field(default_factory=list)
    velocities: list[Vector] = field(default_factory=list)
    velocity_norms: list[float] = field(default_factory=list)
    residual_norms: list[float] = field(default_factory=list)
    resolvent_gaps: list[float] = field(default_factory=list)
    completed: bool = True

    @property
    def final_state(self) -> Vector:
        return self.states[-1]

    def samples(self) -> list[TrajectorySample]:
        return [
            TrajectorySample(t=t, velocity_norm=s, residual_norm=r, resolvent_gap=g)
            for t, s, r, g in zip(
                self.times,
                self.velocity_norms,
                self.residual_norms,
                self.resolvent_gaps,
            )
        ]


def euler_step(fn: VectorField, t: float, w: Vector, h: float) -> Vector:
    return w + h * fn(t, w)


def rk4_step(fn: VectorField, t: float, w: Vector, h: float) -> Vector:
    k1 = fn(t, w)
    k2 = fn(t + h / 2, w + 0.5 * h * k1)
    k3 = fn(t + h / 2, w + 0.5 * h * k2)
    k4 = fn(t + h, w + h * k3)
    return w + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)


_STEPPERS = {"euler": euler_step, "rk4": rk4_step}


def integrate(problem: InclusionProblem, cfg: DynamicsConfig) -> Trajectory:
    """
    Integrate the system on the fixed grid of ``cfg``.

    Args:
        problem: Inclusion defining M through J_{lam A} and B
        cfg: Coefficients, initial data and grid

    Returns:
        Trajectory sampled every ``cfg.sample_every`` steps and at the end; a
        non-finite state stops the integration and leaves ``completed`` False

    Raises:
        UsageError: If the initial data do not fit the problem or lam * L >= 1
    """
    problem.check_point(cfg.x0)
    problem.check_point(cfg.v0)
    dim = problem.dim
    stepper = _STEPPERS[cfg.integrator]

    def field_at(t: float, w: Vector) -> Vector:
        x, v = w[:dim], w[dim:]
        mx, _ = fbf_residual_M(problem, cfg.lam, x)
        return np.concatenate((v, -cfg.gamma.value(t) * v - cfg.tau.value(t) * mx))

    trajectory = Trajectory()

    def record(t: float, w: Vector) -> None:
        x, v = w[:dim], w[dim:]
        mx, y = fbf_residual_M(problem, cfg.lam, x)
        trajectory.times.append(t)
        trajectory.states.append(x.copy())
        trajectory.velocities.append(v.copy())
        trajectory.velocity_norms.append(float(np.linalg.norm(v)))
        trajectory.residual_norms.append(float(np.linalg.norm(mx)))
        trajectory.resolvent_gaps.append(float(np.linalg.norm(x - y)))

    logger.info(
        f"Integrating {problem.name} with {cfg.integrator}: "
        f"T={cfg.horizon:g}, dt={cfg.dt:g}, {cfg.steps} steps"
    )
    w = np.concatenate((cfg.x0, cfg.v0)).astype(np.float64)
    record(0.0, w)
    for j in range(1, cfg.steps + 1):
        w = stepper(field_at, (j - 1) * cfg.dt, w, cfg.dt)
        if not np.all(np.isfinite(w)):
            logger.warning(
                f"Non-finite state at t = {j * cfg.dt:g}; stopping integration"
            )
            trajectory.completed = False
            break
        if j % cfg.sample_every == 0 or j == cfg.steps:
            record(j * cfg.dt, w)

    if trajectory.completed:
        logger.info(
            f"Trajectory done: ||Mx|| {trajectory.residual_norms[0]:.3e} -> "
            f"{trajectory.residual_norms[-1]:.3e}"
        )
    return trajectory


def observed_order(coarse: Vector, medium: Vector, fine: Vector) -> float:
    """Convergence order from end states at steps h, h/2 and h/4."""
    first = float(np.linalg.norm(coarse - medium))
    second = float(np.linalg.norm(medium - fine))
    if first == 0.0 or second == 0.0:
        raise UsageError("end states coincide; the order is undefined")
    return math.log2(first / second)
