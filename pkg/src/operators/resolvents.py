"""Resolvent oracles: identity, projections onto balls and boxes, products."""

from collections.abc import Sequence

import numpy as np

from ..utils.errors import UsageError
from ..vecspace import Vector
from .oracles import ResolventOracle


def project_ball(x: Vector, radius: float) -> Vector:
    """Project x onto the closed Euclidean ball of given radius centred at 0."""
    if radius <= 0:
        raise UsageError(f"radius must be positive, got {radius}")
    length = float(np.linalg.norm(x))
    if length <= radius:
        return x.copy()
    return x * (radius / length)


def project_box(x: Vector, lower: Vector | float, upper: Vector | float) -> Vector:
    """Project x onto the box [lower, upper] coordinatewise."""
    if np.any(np.asarray(lower) > np.asarray(upper)):
        raise UsageError("box lower bound exceeds upper bound")
    return np.clip(x, lower, upper)


def identity_resolvent(dim: int) -> ResolventOracle:
    """Resolvent of the zero operator A = 0."""

    def resolve(lam: float, v: Vector) -> Vector:
        _check_dim(v, dim)
        return v.copy()

    return ResolventOracle(resolve=resolve, descriptor=f"identity(R^{dim})")


def ball_resolvent(dim: int, radius: float) -> ResolventOracle:
    """Resolvent of the normal cone of a centred Euclidean ball."""
    if radius <= 0:
        raise UsageError(f"radius must be positive, got {radius}")

    def resolve(lam: float, v: Vector) -> Vector:
        _check_dim(v, dim)
        return project_ball(v, radius)

    return ResolventOracle(resolve=resolve, descriptor=f"ball(dim={dim}, r={radius:g})")


def box_resolvent(
    dim: int, lower: Vector | float, upper: Vector | float
) -> ResolventOracle:
    """Resolvent of the normal cone of a box."""
    if np.any(np.asarray(lower) > np.asarray(upper)):
        raise UsageError("box lower bound exceeds upper bound")

    def resolve(lam: float, v: Vector) -> Vector:
        _check_dim(v, dim)
        return project_box(v, lower, upper)

    return ResolventOracle(resolve=resolve, descriptor=f"box(dim={dim})")


def product_resolvent(blocks: Sequence[tuple[int, ResolventOracle]]) -> ResolventOracle:
    """
    Blockwise resolvent of a product operator A_1 x ... x A_p.

    Args:
        blocks: (block dimension, block resolvent) pairs in coordinate order

    Returns:
        Resolvent acting on the concatenated space
    """
    if not blocks:
        raise UsageError("product resolvent needs at least one block")
    sizes = [size for size, _ in blocks]
    if any(size < 1 for size in sizes):
        raise UsageError(f"block dimensions must be positive, got {sizes}")
    total = sum(sizes)
    offsets = np.cumsum([0] + sizes)

    def resolve(lam: float, v: Vector) -> Vector:
        _check_dim(v, total)
        out = np.empty_like(v)
        for (start, stop), (_, oracle) in zip(zip(offsets[:-1], offsets[1:]), blocks):
            out[start:stop] = oracle(lam, v[start:stop])
        return out

    descriptor = " x ".join(oracle.descriptor for _, oracle in blocks)
    return ResolventOracle(resolve=resolve, descriptor=descriptor)


def product_ball_resolvent(
    dim_theta: int, dim_phi: int, r_theta: float = 1.0, r_phi: float = 1.0
) -> ResolventOracle:
    """Resolvent of N_{Theta x Phi} for two balls: blockwise projection."""
    if dim_theta < 1 or dim_phi < 1:
        raise UsageError(
            f"block dimensions must be positive, got {dim_theta}, {dim_phi}"
        )
    return product_resolvent(
        [
            (dim_theta, ball_resolvent(dim_theta, r_theta)),
            (dim_phi, ball_resolvent(dim_phi, r_phi)),
        ]
    )


def _check_dim(v: Vector, dim: int) -> None:
    if v.shape != (dim,):
        raise UsageError(f"resolvent expects dimension {dim}, got shape {v.shape}")
