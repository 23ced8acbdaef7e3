"""
Bilinear saddle-point benchmark.

min over theta in Theta, max over phi in Phi of
V(theta, phi) = theta^T A phi + a^T theta + b^T phi, with Theta and Phi
Euclidean balls. The coupled field F(theta, phi) = (A phi + a, -A^T theta - b)
is monotone and Lipschitz but not cocoercive.
"""

import csv
import logging
from collections.abc import Callable
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..config import settings
from ..models import BilinearSpec
from ..operators import (
    InclusionProblem,
    product_ball_resolvent,
    saddle_forward_operator,
)
from ..utils.cache import instance_cache
from ..utils.errors import UsageError
from ..vecspace import (
    Matrix,
    Rng,
    Vector,
    make_rng,
    random_uniform_matrix,
    random_uniform_vector,
    spectral_norm,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SaddleInstance:
    """Data (A, a, b) of a bilinear saddle problem over two balls."""

    A: Matrix
    a: Vector
    b: Vector
    lipschitz: float
    r_theta: float = 1.0
    r_phi: float = 1.0
    seed: int | None = None

    @property
    def m(self) -> int:
        return self.A.shape[0]

    @property
    def n(self) -> int:
        return self.A.shape[1]

    @property
    def dim(self) -> int:
        return self.m + self.n

    def split(self, x: Vector) -> tuple[Vector, Vector]:
        """Split a stacked point into (theta, phi)."""
        if x.shape != (self.dim,):
            raise UsageError(f"point has shape {x.shape}, expected ({self.dim},)")
        return x[: self.m], x[self.m :]


def _skew_lipschitz(matrix: Matrix) -> float:
    m, n = matrix.shape
    skew = np.block([[np.zeros((m, m)), matrix], [-matrix.T, np.zeros((n, n))]])
    return spectral_norm(skew)


def gen_bilinear(
    rng: Rng,
    m: int,
    n: int,
    r_theta: float = 1.0,
    r_phi: float = 1.0,
    seed: int | None = None,
) -> SaddleInstance:
    """
    Draw A (m x n), a (m) and b (n) with i.i.d. entries uniform on [0, 1].

    The stream is consumed in the order A, a, b.
    """
    if m < 1 or n < 1:
        raise UsageError(f"m and n must be positive, got {m}, {n}")
    matrix = random_uniform_matrix(rng, m, n)
    a = random_uniform_vector(rng, m)
    b = random_uniform_vector(rng, n)
    lipschitz = _skew_lipschitz(matrix)
    logger.info(f"Generated bilinear instance {m}x{n} (L = {lipschitz:.6g})")
    return SaddleInstance(
        A=matrix, a=a, b=b, lipschitz=lipschitz, r_theta=r_theta, r_phi=r_phi, seed=seed
    )


def bilinear_from_spec(spec: BilinearSpec) -> SaddleInstance:
    """
    Regenerate an instance from its seed, reusing a cached copy when available.

    The instance is drawn first from a fresh generator for ``spec.seed``.
    """
    key = instance_cache.create_key("bilinear", spec.seed, spec.m, spec.n, *spec.radii)
    cached = instance_cache.get(key)
    if cached is not None:
        logger.debug(f"Instance cache hit for seed {spec.seed} ({spec.m}x{spec.n})")
        return cached

    r_theta, r_phi = spec.radii
    instance = gen_bilinear(
        make_rng(spec.seed),
        spec.m,
        spec.n,
        r_theta=r_theta,
        r_phi=r_phi,
        seed=spec.seed,
    )
    instance_cache.set(key, instance, ttl=settings.instance_cache_ttl_seconds)
    return instance


def as_inclusion(inst: SaddleInstance) -> InclusionProblem:
    """0 in N_{Theta x Phi}(theta, phi) + F(theta, phi) on R^(m+n)."""
    return InclusionProblem(
        dim=inst.dim,
        resolvent=product_ball_resolvent(inst.m, inst.n, inst.r_theta, inst.r_phi),
        forward=saddle_forward_operator(
            inst.A, inst.a, inst.b, lipschitz=inst.lipschitz
        ),
        name=f"bilinear(m={inst.m}, n={inst.n}, seed={inst.seed})",
    )


def gap(inst: SaddleInstance, theta: Vector, phi: Vector) -> float:
    """
    Closed-form gap over unit balls.

    G = -||A phi + a|| + b^T phi - ||A^T theta + b|| - a^T theta

    Raises:
        UsageError: If either radius differs from 1
    """
    if inst.r_theta != 1.0 or inst.r_phi != 1.0:
        raise UsageError("the closed-form gap is only valid for unit balls")
    return float(
        -np.linalg.norm(inst.A @ phi + inst.a)
        + inst.b @ phi
        - np.linalg.norm(inst.A.T @ theta + inst.b)
        - inst.a @ theta
    )


def definition_gap(inst: SaddleInstance, theta: Vector, phi: Vector) -> float:
    """inf_theta' V(theta', phi) - sup_phi' V(theta, phi') over balls of any radius."""
    inf_theta = -inst.r_theta * np.linalg.norm(inst.A @ phi + inst.a) + inst.b @ phi
    sup_phi = inst.r_phi * np.linalg.norm(inst.A.T @ theta + inst.b) + inst.a @ theta
    return float(inf_theta - sup_phi)


def gap_function(inst: SaddleInstance) -> Callable[[Vector], float]:
    """Gap evaluated on stacked points, as the solvers' gap monitor expects."""

    def evaluate(x: Vector) -> float:
        theta, phi = inst.split(x)
        return gap(inst, theta, phi)

    return evaluate


def dump_matrix_csv(inst: SaddleInstance, directory: str | Path) -> list[Path]:
    """Write A, a and b as CSV files with 17 significant digits for external checks."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    fmt = f".{settings.csv_float_digits}g"
    written = []
    for name, data in (("A", inst.A), ("a", inst.a[:, None]), ("b", inst.b[:, None])):
        path = directory / f"{name}.csv"
        with path.open("w", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            for row in data:
                writer.writerow([format(float(v), fmt) for v in row])
        written.append(path)
    logger.info(f"Dumped instance matrices to {directory}")
    return written


def benchmark_start(spec: BilinearSpec) -> Vector:
    """
    Starting point x_0 with entries uniform on [0, 1], drawn right after the
    instance data.

    The stream of ``spec.seed`` is replayed past the m n + m + n instance draws so a
    cached instance yields the same start as a freshly generated one.
    """
    rng = make_rng(spec.seed)
    rng.uniform(size=spec.m * spec.n + spec.m + spec.n)
    return random_uniform_vector(rng, spec.m + spec.n)
