"""Vector-space substrate package."""

from .linalg import (
    Matrix,
    Rng,
    Vector,
    as_vector,
    dot,
    make_rng,
    norm,
    random_ball_point,
    random_uniform_matrix,
    random_uniform_vector,
    spectral_norm,
)

__all__ = [
    "Matrix",
    "Rng",
    "Vector",
    "as_vector",
    "dot",
    "make_rng",
    "norm",
    "random_ball_point",
    "random_uniform_matrix",
    "random_uniform_vector",
    "spectral_norm",
]
