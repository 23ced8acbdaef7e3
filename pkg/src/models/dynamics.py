"""Time-dependent coefficients of the continuous-time system."""

from typing import Literal

import numpy as np
from pydantic import BaseModel, Field, model_validator


class TimeFunction(BaseModel):
    """
    Nonnegative coefficient t -> f(t).

    ``constant``: c0. ``affine``: max(c0 + c1 t, floor). ``table``: linear
    interpolation of (times, values), held constant outside the table.
    """

    kind: Literal["constant", "affine", "table"] = "constant"
    c0: float = Field(0.0, description="Constant value or affine intercept")
    c1: float = Field(0.0, description="Affine slope")
    floor: float = Field(0.0, ge=0, description="Lower clip of the affine kind")
    times: list[float] = Field(default_factory=list)
    values: list[float] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check(self) -> "TimeFunction":
        if self.kind == "constant" and self.c0 < 0:
            raise ValueError(f"constant coefficient must be nonnegative, got {self.c0}")
        if self.kind == "table":
            if len(self.times) < 2 or len(self.times) != len(self.values):
                raise ValueError("table needs at least two (time, value) pairs")
            if any(b <= a for a, b in zip(self.times, self.times[1:])):
                raise ValueError("table times must be strictly increasing")
            if min(self.values) < 0:
                raise ValueError("table values must be nonnegative")
        return self

    @classmethod
    def constant(cls, value: float) -> "TimeFunction":
        return cls(kind="constant", c0=value)

    @classmethod
    def affine(cls, c0: float, c1: float, floor: float = 0.0) -> "TimeFunction":
        return cls(kind="affine", c0=c0, c1=c1, floor=floor)

    @classmethod
    def table(cls, times: list[float], values: list[float]) -> "TimeFunction":
        return cls(kind="table", times=times, values=values)

    @property
    def analytic(self) -> bool:
        """Whether the derivative is known in closed form."""
        return self.kind != "table"

    def value(self, t: float) -> float:
        if self.kind == "constant":
            return self.c0
        if self.kind == "affine":
            return max(self.c0 + self.c1 * t, self.floor)
        return float(np.interp(t, self.times, self.values))

    def derivative(self, t: float) -> float:
        """Right derivative; forward differences of the table for the table kind."""
        if self.kind == "constant":
            return 0.0
        if self.kind == "affine":
            return self.c1 if self.c0 + self.c1 * t > self.floor else 0.0
        times = np.asarray(self.times)
        if t < times[0] or t >= times[-1]:
            return 0.0
        i = int(np.searchsorted(times, t, side="right")) - 1
        rise = self.values[i + 1] - self.values[i]
        return rise / (self.times[i + 1] - self.times[i])


class TrajectorySample(BaseModel):
    """One exported sample of a trajectory."""

    t: float
    velocity_norm: float = Field(..., description="||x'(t)||")
    residual_norm: float = Field(..., description="||Mx(t)||")
    resolvent_gap: float = Field(..., description="||x(t) - y(t)||")
