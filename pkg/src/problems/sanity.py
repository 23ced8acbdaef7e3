"""Instances with a certified solution, used to exercise every monitor."""

import numpy as np

from ..operators import (
    InclusionProblem,
    MonotonicityClass,
    affine_operator,
    identity_resolvent,
)
from ..utils.errors import UsageError


def known_solution_instance(dim: int) -> InclusionProblem:
    """A = 0, B(x) = x - c with c evenly spaced in [-1, 1]; the zero is x* = c."""
    if dim < 1:
        raise UsageError(f"dim must be at least 1, got {dim}")
    c = np.linspace(-1.0, 1.0, dim)
    forward = affine_operator(
        np.eye(dim),
        -c,
        monotonicity=MonotonicityClass.COCOERCIVE,
        lipschitz=1.0,
        descriptor="x - c",
    )
    return InclusionProblem(
        dim=dim,
        resolvent=identity_resolvent(dim),
        forward=forward,
        name=f"known-solution(dim={dim})",
        known_solution=c,
    )
