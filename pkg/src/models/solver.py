"""Data models for solver configuration and run traces."""

from enum import Enum
from typing import Any, Literal

from pydantic import BaseModel, Field, model_validator

from ..config import settings


class Termination(str, Enum):
    """Why a run stopped."""

    CONVERGED = "converged"
    MAX_ITER = "max_iter"
    NUMERICAL_FAILURE = "numerical_failure"


class Monitor(str, Enum):
    """Runtime diagnostics that can be switched on for a run."""

    GAP = "gap"
    LYAPUNOV = "lyapunov"
    MAIN_INEQUALITY = "main_inequality"
    LIPS = "lips"


class SequenceRule(BaseModel):
    """
    Parameter sequence indexed by k >= 1.

    ``constant``: value for every k. ``ramp``: value + slope * (k - 1), clipped at
    ``cap`` in the direction of the slope.
    """

    kind: Literal["constant", "ramp"] = Field("constant", description="Sequence kind")
    value: float = Field(..., description="Constant value, or ramp value at k = 1")
    slope: float = Field(0.0, description="Increment per iteration (ramp only)")
    cap: float | None = Field(None, description="Limit reached by the ramp")

    @model_validator(mode="after")
    def _check_ramp(self) -> "SequenceRule":
        if self.kind == "ramp" and self.slope != 0.0 and self.cap is None:
            raise ValueError("a ramp with nonzero slope needs a cap")
        if self.kind == "ramp" and self.cap is not None:
            if (self.cap - self.value) * self.slope < 0:
                raise ValueError("ramp cap lies behind the start value")
        return self

    @classmethod
    def constant(cls, value: float) -> "SequenceRule":
        return cls(kind="constant", value=value)

    def at(self, k: int) -> float:
        """Value at iteration k (k >= 1)."""
        if self.kind == "constant" or self.slope == 0.0:
            return self.value
        raw = self.value + self.slope * (k - 1)
        assert self.cap is not None
        return min(raw, self.cap) if self.slope > 0 else max(raw, self.cap)

    @property
    def limit(self) -> float:
        """Limit of the sequence as k grows."""
        if self.kind == "constant" or self.slope == 0.0 or self.cap is None:
            return self.value
        return self.cap

    @property
    def lower(self) -> float:
        return min(self.value, self.limit)

    @property
    def upper(self) -> float:
        return max(self.value, self.limit)


class StepsizeConfig(BaseModel):
    """Constant stepsize lam in (0, 1/L) or the adaptive rule with (mu, lambda1)."""

    kind: Literal["constant", "adaptive"] = Field(
        "adaptive", description="Stepsize rule"
    )
    lam: float | None = Field(None, description="Constant stepsize")
    mu: float = Field(settings.default_mu, description="Adaptive rule factor in (0, 1)")
    lambda1: float = Field(
        settings.default_lambda1, description="Initial adaptive stepsize"
    )

    @model_validator(mode="after")
    def _check_kind(self) -> "StepsizeConfig":
        if self.kind == "constant":
            if self.lam is None or self.lam <= 0:
                raise ValueError("constant stepsize needs lam > 0")
        else:
            if not 0 < self.mu < 1:
                raise ValueError(f"mu must lie in (0, 1), got {self.mu}")
            if self.lambda1 <= 0:
                raise ValueError(f"lambda1 must be positive, got {self.lambda1}")
        return self


class SolverConfig(BaseModel):
    """Inertial and relaxation schedules, stepsize rule and stopping criteria."""

    alpha: SequenceRule = Field(
        default_factory=lambda: SequenceRule.constant(0.0),
        description="Inertial schedule",
    )
    rho: SequenceRule = Field(
        default_factory=lambda: SequenceRule.constant(1.0),
        description="Relaxation schedule",
    )
    stepsize: StepsizeConfig = Field(default_factory=StepsizeConfig)
    eps: float = Field(
        settings.default_eps, gt=0, description="Tolerance on ||y_k - z_k||"
    )
    max_iter: int = Field(settings.default_max_iter, ge=1, description="Iteration cap")
    seed: int = Field(settings.default_seed, ge=0, description="Seed of the run")
    monitors: set[Monitor] = Field(
        default_factory=lambda: set(Monitor), description="Enabled diagnostics"
    )

    @model_validator(mode="after")
    def _check_schedules(self) -> "SolverConfig":
        if self.alpha.value < 0 or self.alpha.upper >= 1:
            raise ValueError("inertial parameters must lie in [0, 1)")
        if self.alpha.kind == "ramp" and self.alpha.slope < 0:
            raise ValueError("inertial schedule must be nondecreasing")
        if self.rho.lower <= 0:
            raise ValueError("relaxation parameters must be positive")
        return self


class IterationRow(BaseModel):
    """One row of a run trace."""

    k: int
    residual: float = Field(..., description="||y_k - z_k||")
    lam: float = Field(..., description="Stepsize lambda_k used in step k")
    theta: float | None = Field(None, description="lambda_k / lambda_{k+1}")
    delta: float | None = Field(None, description="Descent coefficient delta_k")
    lyapunov: float | None = Field(None, description="H_k, needs a known solution")
    main_slack: float | None = Field(
        None, description="RHS - LHS of the main inequality"
    )
    gap: float | None = Field(None, description="Saddle gap evaluated at y_k")
    step_norm: float | None = Field(None, description="||x_{k+1} - x_k||")
    lips_ok: bool | None = Field(
        None, description="Whether the stepsize inequality held"
    )


class RunRecord(BaseModel):
    """Trace and outcome of one solver run."""

    method: str = Field(..., description="Solver that produced the trace")
    problem: str = Field(..., description="Problem name")
    rows: list[IterationRow] = Field(default_factory=list)
    termination: Termination
    iterations_used: int = Field(..., ge=0)
    wall_time: float = Field(..., ge=0, description="Seconds")
    mu: float | None = Field(None, description="Effective mu of the stepsize rule")
    final_x: list[float] = Field(default_factory=list, description="Last iterate x_k")
    final_y: list[float] | None = Field(None, description="Last y_k (feasible point)")

    @property
    def final_residual(self) -> float | None:
        return self.rows[-1].residual if self.rows else None

    @property
    def final_gap(self) -> float | None:
        return self.rows[-1].gap if self.rows else None


class RunSummary(BaseModel):
    """JSON summary written next to a trace."""

    config: dict[str, Any]
    termination: Termination
    iterations: int
    residual: float | None
    gap: float | None
    timings: dict[str, float]


class ParameterCheck(BaseModel):
    """Outcome of validating a limiting (alpha, rho, mu) triple."""

    ok: bool
    bound: float = Field(..., description="Supremum of admissible rho for (alpha, mu)")
    violation: str | None = None
