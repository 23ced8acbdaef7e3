"""Explicit time discretization of the dynamics as RIFBF parameters."""

from collections.abc import Sequence

from ..utils.errors import UsageError


def discretize_to_rifbf(
    gammas: Sequence[float], taus: Sequence[float], steps: Sequence[float]
) -> tuple[list[float], list[float]]:
    """
    Map (gamma_k, tau_k, h_k) to alpha_k = 1 - gamma_k h_k and rho_k = h_k^2 tau_k.

    With z_k = x_k + alpha_k (x_k - x_{k-1}) the explicit scheme is exactly one
    RIFBF step per k.

    Raises:
        UsageError: If the sequences differ in length, h_k or tau_k are not positive,
            gamma_k is negative, or gamma_k h_k > 1
    """
    if not len(gammas) == len(taus) == len(steps):
        raise UsageError("gamma, tau and h sequences must have equal length")

    alphas, rhos = [], []
    for k, (gamma, tau, h) in enumerate(zip(gammas, taus, steps), start=1):
        if h <= 0 or tau <= 0 or gamma < 0:
            raise UsageError(
                f"need h > 0, tau > 0 and gamma >= 0 at k={k}, got {h}, {tau}, {gamma}"
            )
        if gamma * h > 1:
            raise UsageError(f"gamma * h = {gamma * h:g} > 1 at k={k} gives alpha < 0")
        alphas.append(1.0 - gamma * h)
        rhos.append(h * h * tau)
    return alphas, rhos
