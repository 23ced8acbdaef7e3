"""Pseudo-monotone variational inequality over a ball."""

import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from ..config import settings
from ..operators import (
    ForwardOracle,
    InclusionProblem,
    affine_operator,
    ball_resolvent,
    pseudo_mono_wrap,
)
from ..utils.errors import UsageError
from ..vecspace import Matrix, Rng, Vector, random_ball_point, random_uniform_vector

logger = logging.getLogger(__name__)

WITNESS_BUDGET = 100_000


@dataclass(frozen=True)
class PseudoMonoInstance:
    """B(x) = (Sx + q) / (1 + ||x||^2) with S skew, over the ball of given radius."""

    S: Matrix
    q: Vector
    radius: float

    @property
    def dim(self) -> int:
        return self.q.shape[0]

    @staticmethod
    def scale(x: Vector) -> float:
        return 1.0 / (1.0 + float(x @ x))


def rotation_blocks(dim: int) -> Matrix:
    """Block-diagonal skew matrix with 2 x 2 blocks [[0, 1], [-1, 0]]."""
    if dim < 2 or dim % 2:
        raise UsageError(f"dimension must be even and positive, got {dim}")
    return np.kron(np.eye(dim // 2), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def gen_pseudo(rng: Rng, dim: int, radius: float) -> PseudoMonoInstance:
    if radius <= 0:
        raise UsageError(f"radius must be positive, got {radius}")
    return PseudoMonoInstance(
        S=rotation_blocks(dim), q=random_uniform_vector(rng, dim), radius=radius
    )


def pseudo_inclusion(inst: PseudoMonoInstance) -> InclusionProblem:
    inner = affine_operator(inst.S, inst.q, descriptor=f"skew-plus-shift(R^{inst.dim})")
    forward = pseudo_mono_wrap(
        inner, PseudoMonoInstance.scale, descriptor="(Sx + q) / (1 + |x|^2)"
    )
    return InclusionProblem(
        dim=inst.dim,
        resolvent=ball_resolvent(inst.dim, inst.radius),
        forward=forward,
        name=f"pseudo-monotone(dim={inst.dim}, r={inst.radius:g})",
    )


def make_pseudo_instance(rng: Rng, dim: int, radius: float) -> InclusionProblem:
    """
    Variational inequality over the ball {||x|| <= radius} with a pseudo-monotone field.

    The field is the positive rescaling x -> (Sx + q) / (1 + ||x||^2) of the
    monotone affine map Sx + q, where S is built from rotation blocks and q is
    uniform on [0, 1]. No solution is attached; see pseudo_interior_solution.
    """
    return pseudo_inclusion(gen_pseudo(rng, dim, radius))


def pseudo_interior_solution(inst: PseudoMonoInstance) -> Vector | None:
    """
    The zero x* = Sq of Sx + q (S^2 = -I), if it lies strictly inside the ball.

    Returns None when ||q|| >= radius.
    """
    solution = inst.S @ inst.q
    if np.linalg.norm(solution) >= inst.radius:
        return None
    return solution


def pseudo_monotonicity_violations(
    operator: ForwardOracle,
    sampler: Callable[[Rng], Vector],
    rng: Rng,
    pairs: int,
    tolerance: float | None = None,
) -> int:
    """Count sampled pairs with <Bx, y - x> >= 0 but <By, y - x> < -tolerance."""
    tolerance = settings.monotonicity_tolerance if tolerance is None else tolerance
    violations = 0
    for _ in range(pairs):
        x, y = sampler(rng), sampler(rng)
        direction = y - x
        if operator(x) @ direction >= 0 and operator(y) @ direction < -tolerance:
            violations += 1
    return violations


def find_monotonicity_witness(
    operator: ForwardOracle,
    sampler: Callable[[Rng], Vector],
    rng: Rng,
    threshold: float = 1e-6,
    budget: int = WITNESS_BUDGET,
) -> tuple[Vector, Vector] | None:
    """Random search for a pair with <Bx - By, x - y> < -threshold."""
    for attempt in range(budget):
        x, y = sampler(rng), sampler(rng)
        if (operator(x) - operator(y)) @ (x - y) < -threshold:
            logger.info(f"Non-monotonicity witness found after {attempt + 1} pairs")
            return x, y
    logger.warning(f"No non-monotonicity witness within {budget} pairs")
    return None


def ball_sampler(dim: int, radius: float) -> Callable[[Rng], Vector]:
    """Uniform sampler of the ball, for the pair tests above."""

    def sample(rng: Rng) -> Vector:
        return random_ball_point(rng, dim, radius)

    return sample
