"""Data models for parameter sweeps over the bilinear benchmark."""

from typing import Literal

from pydantic import BaseModel, Field, field_validator, model_validator

from ..config import settings


class BilinearSpec(BaseModel):
    """Serialised bilinear instance: regenerated from the seed, never stored."""

    m: int = Field(500, ge=1, description="Dimension of theta")
    n: int = Field(500, ge=1, description="Dimension of phi")
    seed: int = Field(settings.default_seed, ge=0, description="Instance seed")
    radii: tuple[float, float] = Field(
        (1.0, 1.0), description="Ball radii (r_theta, r_phi)"
    )

    @field_validator("radii")
    @classmethod
    def _check_radii(cls, value: tuple[float, float]) -> tuple[float, float]:
        if value[0] <= 0 or value[1] <= 0:
            raise ValueError(f"radii must be positive, got {value}")
        return value


SweepStatus = Literal["converged", "cap", "numerical_failure", "skipped"]


class SweepSpec(BaseModel):
    """Grid of (mu, alpha, rho, seed) cells run on one problem family."""

    mu: list[float] = Field(..., min_length=1, description="Stepsize factors")
    alpha: list[float] = Field(..., min_length=1, description="Inertial grid")
    rho: list[float] = Field(..., min_length=1, description="Relaxation grid")
    eps: float = Field(settings.default_eps, gt=0)
    max_iter: int = Field(settings.default_max_iter, ge=1)
    problem: BilinearSpec = Field(default_factory=BilinearSpec)
    seeds: list[int] = Field(
        default_factory=list, description="Repeat seeds; empty means the problem seed"
    )
    output: str | None = Field(None, description="CSV path of the result table")
    stepsize: Literal["constant", "adaptive"] = Field(
        "constant", description="constant uses lambda = mu / L"
    )
    lambda1: float = Field(settings.default_lambda1, gt=0, description="Adaptive start")
    include_wall_time: bool = Field(
        False, description="Write wall times (makes the CSV run-dependent)"
    )

    @model_validator(mode="after")
    def _check_grids(self) -> "SweepSpec":
        for mu in self.mu:
            if not 0 < mu < 1:
                raise ValueError(f"mu must lie in (0, 1), got {mu}")
        if any(seed < 0 for seed in self.seeds):
            raise ValueError("seeds must be nonnegative")
        return self

    @property
    def run_seeds(self) -> list[int]:
        return self.seeds or [self.problem.seed]

    @property
    def cell_count(self) -> int:
        return len(self.mu) * len(self.alpha) * len(self.rho) * len(self.run_seeds)


class SweepRow(BaseModel):
    """One cell of a sweep table."""

    mu: float
    alpha: float
    rho: float
    seed: int
    status: SweepStatus
    iterations: int | None = Field(None, description="max_iter for cap rows")
    residual: float | None = None
    gap: float | None = None
    wall_time: float | None = None

    @property
    def sort_key(self) -> tuple[float, float, float, int]:
        return (self.mu, self.alpha, self.rho, self.seed)


class SweepResult(BaseModel):
    """Sorted sweep table."""

    spec: SweepSpec
    rows: list[SweepRow] = Field(default_factory=list)

    def cell(self, mu: float, alpha: float, rho: float, seed: int) -> SweepRow | None:
        for row in self.rows:
            if row.sort_key == (mu, alpha, rho, seed):
                return row
        return None

    @property
    def skipped(self) -> list[SweepRow]:
        return [row for row in self.rows if row.status == "skipped"]
