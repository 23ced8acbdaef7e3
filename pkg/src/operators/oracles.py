"""Oracle types for the inclusion 0 in Ax + Bx."""

from collections.abc import Callable
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from ..utils.errors import UsageError
from ..vecspace import Vector


class MonotonicityClass(str, Enum):
    """Structural class of a single-valued operator B."""

    MONOTONE = "monotone"
    PSEUDO_MONOTONE = "pseudo-monotone-on-C"
    COCOERCIVE = "cocoercive"


@dataclass(frozen=True)
class ResolventOracle:
    """
    Resolvent J_{lambda A} = (I + lambda A)^{-1} of a maximally monotone operator A.

    ``resolve(lam, v)`` returns J_{lam A}(v). For normal cones the resolvent is a
    projection and ignores ``lam``.
    """

    resolve: Callable[[float, Vector], Vector]
    descriptor: str

    def __call__(self, lam: float, v: Vector) -> Vector:
        return self.resolve(lam, v)


@dataclass(frozen=True)
class ForwardOracle:
    """Single-valued operator B evaluated explicitly."""

    evaluate: Callable[[Vector], Vector]
    monotonicity: MonotonicityClass
    lipschitz: float | None = None
    descriptor: str = ""

    def __post_init__(self):
        if self.lipschitz is not None and self.lipschitz <= 0:
            raise UsageError(
                f"Lipschitz constant must be positive, got {self.lipschitz}"
            )

    def __call__(self, x: Vector) -> Vector:
        return self.evaluate(x)

    @property
    def is_monotone(self) -> bool:
        """Cocoercive operators are monotone as well."""
        return self.monotonicity in (
            MonotonicityClass.MONOTONE,
            MonotonicityClass.COCOERCIVE,
        )


@dataclass(frozen=True)
class InclusionProblem:
    """The problem 0 in Ax + Bx on R^dim."""

    dim: int
    resolvent: ResolventOracle
    forward: ForwardOracle
    name: str
    known_solution: Vector | None = None
    # Sampled bound for operators without a certified constant; sanity checks only.
    lipschitz_estimate: float | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise UsageError(f"problem dimension must be positive, got {self.dim}")
        if self.known_solution is not None and self.known_solution.shape != (self.dim,):
            raise UsageError(
                f"known solution has shape {self.known_solution.shape}, "
                f"expected ({self.dim},)"
            )

    @property
    def lipschitz(self) -> float | None:
        return self.forward.lipschitz

    def check_point(self, x: Vector) -> None:
        """Raise UsageError unless x is a finite vector of the problem dimension."""
        if x.shape != (self.dim,):
            raise UsageError(f"point has shape {x.shape}, expected ({self.dim},)")
        if not np.all(np.isfinite(x)):
            raise UsageError("point has non-finite entries")

    def with_known_solution(self, solution: Vector) -> "InclusionProblem":
        """Return a copy carrying a certified zero of A + B."""
        return replace(self, known_solution=np.array(solution, dtype=np.float64))
