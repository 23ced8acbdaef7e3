"""Request and response models shared by the HTTP routes and the CLI."""

from typing import Literal

from pydantic import BaseModel, Field, model_validator

from ..config import settings
from .solver import IterationRow, RunSummary

ProblemKind = Literal["bilinear", "pseudo", "known"]
Method = Literal["rifbf", "forward_backward", "extragradient"]


class SolveRequest(BaseModel):
    """One solver run on a generated problem."""

    problem: ProblemKind = Field("bilinear", description="Problem family")
    m: int = Field(500, ge=1, description="Bilinear: dimension of theta")
    n: int = Field(500, ge=1, description="Bilinear: dimension of phi")
    dim: int = Field(
        20, ge=1, description="Pseudo-monotone and known-solution dimension"
    )
    radius: float = Field(5.0, gt=0, description="Pseudo-monotone ball radius")
    seed: int = Field(
        settings.default_seed, ge=0, description="Instance and start seed"
    )

    method: Method = Field("rifbf", description="Solver")
    alpha: float = Field(0.0, description="Inertial parameter")
    rho: float = Field(1.0, description="Relaxation parameter")
    lam: float | None = Field(None, gt=0, description="Explicit constant stepsize")
    stepsize: Literal["constant", "adaptive"] = Field(
        "adaptive", description="constant uses lambda = mu / L when lam is not given"
    )
    mu: float = Field(settings.default_mu, description="Stepsize factor in (0, 1)")
    lambda1: float = Field(settings.default_lambda1, gt=0, description="Adaptive start")
    eps: float = Field(settings.default_eps, gt=0)
    max_iter: int = Field(settings.default_max_iter, ge=1)
    include_trace: bool = Field(False, description="Return the per-iteration trace")

    @model_validator(mode="after")
    def _check_mu(self) -> "SolveRequest":
        if self.lam is None and not 0 < self.mu < 1:
            raise ValueError(f"mu must lie in (0, 1), got {self.mu}")
        if self.problem == "pseudo" and self.dim % 2:
            raise ValueError("the pseudo-monotone problem needs an even dimension")
        return self


class SolveResponse(BaseModel):
    summary: RunSummary
    trace: list[IterationRow] | None = None


class ValidateRequest(BaseModel):
    alpha: float = Field(..., description="Limit of the inertial sequence")
    rho: float = Field(..., description="Limit of the relaxation sequence")
    mu: float = Field(..., description="Stepsize factor")
