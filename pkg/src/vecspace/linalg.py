"""
Dense real-vector arithmetic and seeded randomness.

Vectors are one-dimensional float64 numpy arrays. Every random stream in the
project comes from ``numpy.random.Generator`` driven by the PCG64 bit generator;
``Generator.uniform(lo, hi)`` maps a 53-bit double ``u`` in [0, 1) to
``lo + (hi - lo) * u``, so streams are portable across platforms for a fixed seed.
"""

import logging

import numpy as np
import numpy.typing as npt

from ..config import settings
from ..utils.errors import ConvergenceError, UsageError

logger = logging.getLogger(__name__)

Vector = npt.NDArray[np.float64]
Matrix = npt.NDArray[np.float64]
Rng = np.random.Generator

# Perturbation applied to coordinate 0 of the restart vector in spectral_norm.
POWER_RESTART_PERTURBATION = 1e-6


def make_rng(seed: int) -> Rng:
    """Create the project PRNG (PCG64) for a 64-bit unsigned seed."""
    if seed < 0 or seed >= 2**64:
        raise UsageError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return np.random.Generator(np.random.PCG64(seed))


def as_vector(coords: npt.ArrayLike) -> Vector:
    """
    Build a Vector from coordinates.

    Raises:
        UsageError: If the input is not one-dimensional, is empty or holds
            non-finite entries
    """
    vector = np.array(coords, dtype=np.float64)
    if vector.ndim != 1 or vector.size == 0:
        raise UsageError(
            f"a vector needs a positive dimension, got shape {vector.shape}"
        )
    if not np.all(np.isfinite(vector)):
        raise UsageError("vector entries must be finite")
    return vector


def _check_same_dim(u: Vector, v: Vector) -> None:
    if u.shape != v.shape:
        raise UsageError(f"dimension mismatch: {u.shape[0]} vs {v.shape[0]}")


def dot(u: Vector, v: Vector) -> float:
    """Inner product of two vectors of equal dimension."""
    _check_same_dim(u, v)
    return float(np.dot(u, v))


def norm(u: Vector) -> float:
    """Euclidean norm."""
    return float(np.sqrt(np.dot(u, u)))


def random_uniform_vector(
    rng: Rng, dim: int, lo: float = 0.0, hi: float = 1.0
) -> Vector:
    """Draw a vector with i.i.d. coordinates uniform on [lo, hi]."""
    if dim < 1:
        raise UsageError(f"dim must be at least 1, got {dim}")
    if not lo < hi:
        raise UsageError(f"lower bound {lo} must be below upper bound {hi}")
    return rng.uniform(lo, hi, size=dim)


def random_uniform_matrix(
    rng: Rng, rows: int, cols: int, lo: float = 0.0, hi: float = 1.0
) -> Matrix:
    """Draw a rows x cols matrix with i.i.d. entries uniform on [lo, hi]."""
    if rows < 1 or cols < 1:
        raise UsageError(f"matrix shape must be positive, got {rows}x{cols}")
    if not lo < hi:
        raise UsageError(f"lower bound {lo} must be below upper bound {hi}")
    return rng.uniform(lo, hi, size=(rows, cols))


def random_ball_point(rng: Rng, dim: int, radius: float) -> Vector:
    """Draw a point uniformly from the closed Euclidean ball of given radius."""
    if radius <= 0:
        raise UsageError(f"radius must be positive, got {radius}")
    direction = rng.standard_normal(dim)
    direction /= np.linalg.norm(direction)
    return radius * rng.uniform() ** (1.0 / dim) * direction


def _power_iterate(
    m: Matrix, v: Vector, tol: float, max_iter: int
) -> tuple[float, Vector, bool]:
    """
    Power iteration on M^T M from a unit vector.

    Returns the last estimate of ||M v||, the last iterate and whether the relative
    change of the estimate fell below ``tol`` within ``max_iter`` steps. A start
    vector mapped to zero yields an estimate of 0.0.
    """
    w = m.T @ (m @ v)
    estimate = float(np.linalg.norm(m @ v))
    for _ in range(max_iter):
        w_norm = np.linalg.norm(w)
        if w_norm == 0.0:
            return 0.0, v, True
        v = w / w_norm
        mv = m @ v
        new_estimate = float(np.linalg.norm(mv))
        if abs(new_estimate - estimate) <= tol * new_estimate:
            return new_estimate, v, True
        estimate = new_estimate
        w = m.T @ mv
    return estimate, v, False


def spectral_norm(
    matrix: npt.ArrayLike,
    tol: float | None = None,
    max_iter: int | None = None,
) -> float:
    """
    Largest singular value of a dense matrix by power iteration on M^T M.

    The first pass starts from the normalized all-ones vector. A second pass always
    follows from the all-ones vector with coordinate 0 perturbed by 1e-6, after
    removing its component along the direction the first pass settled on. If that
    direction was not in the dominant singular space, the second pass climbs above
    the first estimate; the larger of the two is returned.

    Args:
        matrix: Rectangular matrix with finite entries
        tol: Relative change of the estimate at which the iteration stops
        max_iter: Iteration budget per pass

    Returns:
        The spectral norm estimate

    Raises:
        UsageError: If the matrix is not two-dimensional or has non-finite entries
        ConvergenceError: If the estimate does not settle within max_iter
    """
    tol = settings.spectral_tol if tol is None else tol
    max_iter = settings.spectral_max_iter if max_iter is None else max_iter

    m = np.asarray(matrix, dtype=np.float64)
    if m.ndim != 2 or m.size == 0:
        raise UsageError(
            f"spectral_norm needs a non-empty 2-D matrix, got shape {m.shape}"
        )
    if not np.all(np.isfinite(m)):
        raise UsageError("matrix entries must be finite")
    if not np.any(m):
        return 0.0

    cols = m.shape[1]
    start = np.full(cols, 1.0 / np.sqrt(cols))
    estimate, settled, converged = _power_iterate(m, start, tol, max_iter)
    if not converged:
        raise ConvergenceError(
            f"power iteration did not converge within {max_iter} iterations",
            estimate,
        )

    restart = start.copy()
    restart[0] += POWER_RESTART_PERTURBATION
    restart -= (restart @ settled) * settled
    restart_norm = np.linalg.norm(restart)
    if restart_norm > 0.0:
        second, _, converged = _power_iterate(
            m, restart / restart_norm, tol, max_iter
        )
        if second > estimate * (1 + tol):
            if not converged:
                raise ConvergenceError(
                    f"power iteration did not converge within {max_iter} "
                    "iterations after restart",
                    second,
                )
            logger.debug(
                f"Restart raised the spectral norm estimate from {estimate:.12g} "
                f"to {second:.12g}"
            )
            estimate = second

    logger.debug(f"Spectral norm {estimate:.12g}")
    return estimate
