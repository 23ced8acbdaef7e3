"""Stepsize rules: constant lambda in (0, 1/L) and the adaptive rule without L."""

from dataclasses import dataclass
from typing import Literal

import numpy as np

from ..config import settings
from ..models import StepsizeConfig
from ..utils.errors import UsageError
from ..vecspace import Vector


@dataclass
class StepsizeRule:
    """
    Per-run stepsize state.

    One instance belongs to exactly one run; ``lam_current`` is updated in place.
    """

    kind: Literal["constant", "adaptive"]
    lam_current: float
    mu: float | None = None
    lambda1: float | None = None
    lam_const: float | None = None

    @classmethod
    def constant(cls, lam: float) -> "StepsizeRule":
        if lam <= 0:
            raise UsageError(f"stepsize must be positive, got {lam}")
        return cls(kind="constant", lam_current=lam, lam_const=lam)

    @classmethod
    def adaptive(
        cls, mu: float | None = None, lambda1: float | None = None
    ) -> "StepsizeRule":
        mu = settings.default_mu if mu is None else mu
        lambda1 = settings.default_lambda1 if lambda1 is None else lambda1
        if not 0 < mu < 1:
            raise UsageError(f"mu must lie in (0, 1), got {mu}")
        if lambda1 <= 0:
            raise UsageError(f"lambda1 must be positive, got {lambda1}")
        return cls(kind="adaptive", lam_current=lambda1, mu=mu, lambda1=lambda1)

    @classmethod
    def from_config(cls, config: StepsizeConfig) -> "StepsizeRule":
        if config.kind == "constant":
            assert config.lam is not None
            return cls.constant(config.lam)
        return cls.adaptive(config.mu, config.lambda1)

    def effective_mu(self, lipschitz: float | None) -> float | None:
        """
        The mu entering the descent quantities.

        The constant rule is the adaptive rule with lambda1 = lam and mu = lam * L,
        so its mu is only defined when L is known.
        """
        if self.kind == "adaptive":
            return self.mu
        if lipschitz is None:
            return None
        assert self.lam_const is not None
        return self.lam_const * lipschitz


def next_lambda(
    rule: StepsizeRule, y: Vector, z: Vector, by: Vector, bz: Vector
) -> tuple[float, float]:
    """
    Produce lambda_{k+1} from (y_k, z_k) and return it with
    theta_k = lambda_k / lambda_{k+1}.

    The adaptive branch keeps lambda_k whenever mu ||y - z|| >= lambda_k ||By - Bz||,
    which is min{lambda_k, mu ||y - z|| / ||By - Bz||} without a division in the
    common case. By = Bz is decided by an exact comparison of the norm to 0.0.
    """
    if y.shape != z.shape or by.shape != bz.shape:
        raise UsageError("next_lambda expects vectors of equal dimension")

    lam = rule.lam_current
    if rule.kind == "constant":
        assert rule.lam_const is not None
        rule.lam_current = rule.lam_const
        return rule.lam_const, 1.0

    assert rule.mu is not None
    field_gap = float(np.linalg.norm(by - bz))
    if field_gap == 0.0:
        lam_next = lam
    else:
        scaled = rule.mu * float(np.linalg.norm(y - z))
        lam_next = lam if scaled >= lam * field_gap else scaled / field_gap

    rule.lam_current = lam_next
    return lam_next, lam / lam_next


def check_lips_inequality(
    lam_next: float,
    mu: float,
    y: Vector,
    z: Vector,
    by: Vector,
    bz: Vector,
    relative_slack: float | None = None,
) -> bool:
    """Whether ||By - Bz|| <= (mu / lambda_{k+1}) ||y - z|| holds up to a slack."""
    if relative_slack is None:
        relative_slack = settings.lips_relative_slack
    lhs = float(np.linalg.norm(by - bz))
    rhs = mu / lam_next * float(np.linalg.norm(y - z))
    return lhs <= rhs * (1 + relative_slack) or lhs == 0.0
