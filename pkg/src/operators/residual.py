"""The FBF residual operator M and its coercivity modulus."""

from ..utils.errors import UsageError
from ..vecspace import Vector
from .oracles import InclusionProblem


def fbf_residual_M(
    problem: InclusionProblem, lam: float, x: Vector
) -> tuple[Vector, Vector]:
    """
    Evaluate Mx = x - y - lam (Bx - By) with y = J_{lam A}(x - lam Bx).

    Args:
        problem: The inclusion problem
        lam: Stepsize; lam * L < 1 is required when L is known
        x: Evaluation point

    Returns:
        Tuple (Mx, y)

    Raises:
        UsageError: If lam is not positive or lam * L >= 1
    """
    if lam <= 0:
        raise UsageError(f"stepsize must be positive, got {lam}")
    lipschitz = problem.lipschitz
    if lipschitz is not None and lam * lipschitz >= 1:
        raise UsageError(f"lambda * L = {lam * lipschitz:g} must be below 1")

    bx = problem.forward(x)
    y = problem.resolvent(lam, x - lam * bx)
    by = problem.forward(y)
    return x - y - lam * (bx - by), y


def coercivity_kappa(lam: float, lipschitz: float) -> float:
    """Coercivity modulus (1 - lam L) / (1 + lam L)^2 of M with respect to its zeros."""
    if lam <= 0 or lipschitz <= 0:
        raise UsageError(f"lambda and L must be positive, got {lam}, {lipschitz}")
    product = lam * lipschitz
    if product >= 1:
        raise UsageError(f"lambda * L = {product:g} must be below 1")
    return (1 - product) / (1 + product) ** 2
