"""Forward operators B: affine maps, the saddle-point field and rescaled wrappers."""

import logging
from collections.abc import Callable

import numpy as np
import numpy.typing as npt

from ..config import settings
from ..utils.errors import UsageError
from ..vecspace import Rng, Vector, spectral_norm
from .oracles import ForwardOracle, MonotonicityClass

logger = logging.getLogger(__name__)


def zero_operator(dim: int) -> ForwardOracle:
    """B = 0 on R^dim."""

    def evaluate(x: Vector) -> Vector:
        return np.zeros(dim)

    return ForwardOracle(
        evaluate=evaluate,
        monotonicity=MonotonicityClass.COCOERCIVE,
        lipschitz=None,
        descriptor=f"zero(R^{dim})",
    )


def affine_operator(
    matrix: npt.ArrayLike,
    shift: npt.ArrayLike | None = None,
    monotonicity: MonotonicityClass = MonotonicityClass.MONOTONE,
    lipschitz: float | None = None,
    descriptor: str = "affine",
) -> ForwardOracle:
    """
    B(x) = Sx + q for a square matrix S.

    The Lipschitz constant defaults to the spectral norm of S; pass ``lipschitz``
    when it is known exactly.
    """
    s = np.array(matrix, dtype=np.float64)
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        raise UsageError(f"affine operator needs a square matrix, got shape {s.shape}")
    q = np.zeros(s.shape[0]) if shift is None else np.array(shift, dtype=np.float64)
    if q.shape != (s.shape[0],):
        raise UsageError(f"shift has shape {q.shape}, expected ({s.shape[0]},)")

    if lipschitz is None:
        norm_s = spectral_norm(s)
        lipschitz = norm_s if norm_s > 0 else None

    def evaluate(x: Vector) -> Vector:
        return s @ x + q

    return ForwardOracle(
        evaluate=evaluate,
        monotonicity=monotonicity,
        lipschitz=lipschitz,
        descriptor=descriptor,
    )


def saddle_forward_operator(
    matrix: npt.ArrayLike,
    a: npt.ArrayLike,
    b: npt.ArrayLike,
    lipschitz: float | None = None,
) -> ForwardOracle:
    """
    Monotone field F(theta, phi) = (A phi + a, -A^T theta - b) of a bilinear saddle.

    The Lipschitz constant is the spectral norm of the skew block matrix
    [[0, A], [-A^T, 0]] unless a precomputed value is passed.
    """
    coupling = np.array(matrix, dtype=np.float64)
    a = np.array(a, dtype=np.float64)
    b = np.array(b, dtype=np.float64)
    if coupling.ndim != 2:
        raise UsageError(f"coupling matrix must be 2-D, got shape {coupling.shape}")
    m, n = coupling.shape
    if a.shape != (m,) or b.shape != (n,):
        raise UsageError(
            f"shape mismatch: A is {m}x{n}, a has {a.shape}, b has {b.shape}"
        )

    if lipschitz is None:
        skew = np.block([[np.zeros((m, m)), coupling], [-coupling.T, np.zeros((n, n))]])
        norm_skew = spectral_norm(skew)
    else:
        norm_skew = lipschitz
    logger.info(f"Saddle operator {m}x{n}: Lipschitz constant {norm_skew:.12g}")

    def evaluate(x: Vector) -> Vector:
        if x.shape != (m + n,):
            raise UsageError(
                f"saddle operator expects dimension {m + n}, got {x.shape}"
            )
        theta, phi = x[:m], x[m:]
        return np.concatenate((coupling @ phi + a, -(coupling.T @ theta) - b))

    return ForwardOracle(
        evaluate=evaluate,
        monotonicity=MonotonicityClass.MONOTONE,
        lipschitz=norm_skew if norm_skew > 0 else None,
        descriptor=f"saddle({m}x{n})",
    )


def pseudo_mono_wrap(
    inner: ForwardOracle,
    scale: Callable[[Vector], float],
    descriptor: str = "",
) -> ForwardOracle:
    """
    Positive rescaling x -> scale(x) * G(x) of a monotone operator G.

    The result is pseudo-monotone but in general not monotone; its Lipschitz
    constant is left unset.

    Raises:
        UsageError: If G is not monotone, or at evaluation time if scale(x) <= 0
    """
    if not inner.is_monotone:
        raise UsageError(
            f"wrapped operator must be monotone, got {inner.monotonicity.value}"
        )

    def evaluate(x: Vector) -> Vector:
        factor = scale(x)
        if not factor > 0:
            raise UsageError(
                f"scaling function must be positive, got {factor} "
                f"at |x|={np.linalg.norm(x):g}"
            )
        return factor * inner(x)

    return ForwardOracle(
        evaluate=evaluate,
        monotonicity=MonotonicityClass.PSEUDO_MONOTONE,
        lipschitz=None,
        descriptor=descriptor or f"scaled({inner.descriptor})",
    )


def estimate_lipschitz(
    operator: ForwardOracle,
    sampler: Callable[[Rng], Vector],
    rng: Rng,
    samples: int | None = None,
    safety: float | None = None,
) -> float:
    """
    Sampled Lipschitz bound: max ||Bx - By|| / ||x - y|| over random pairs, times
    a safety factor.

    Args:
        operator: The operator B
        sampler: Draws one point of the region of interest
        rng: Random stream for the sampler
        samples: Number of pairs
        safety: Multiplicative safety factor

    Returns:
        The inflated maximum ratio
    """
    samples = settings.lipschitz_samples if samples is None else samples
    safety = settings.lipschitz_safety if safety is None else safety

    best = 0.0
    for _ in range(samples):
        x, y = sampler(rng), sampler(rng)
        gap = np.linalg.norm(x - y)
        if gap == 0.0:
            continue
        best = max(best, float(np.linalg.norm(operator(x) - operator(y)) / gap))

    logger.debug(f"Sampled Lipschitz ratio {best:.6g} over {samples} pairs")
    return safety * best
