"""Operator abstractions package."""

from .forward import (
    affine_operator,
    estimate_lipschitz,
    pseudo_mono_wrap,
    saddle_forward_operator,
    zero_operator,
)
from .oracles import ForwardOracle, InclusionProblem, MonotonicityClass, ResolventOracle
from .residual import coercivity_kappa, fbf_residual_M
from .resolvents import (
    ball_resolvent,
    box_resolvent,
    identity_resolvent,
    product_ball_resolvent,
    product_resolvent,
    project_ball,
    project_box,
)

__all__ = [
    "ForwardOracle",
    "InclusionProblem",
    "MonotonicityClass",
    "ResolventOracle",
    "affine_operator",
    "ball_resolvent",
    "box_resolvent",
    "coercivity_kappa",
    "estimate_lipschitz",
    "fbf_residual_M",
    "identity_resolvent",
    "product_ball_resolvent",
    "product_resolvent",
    "project_ball",
    "project_box",
    "pseudo_mono_wrap",
    "saddle_forward_operator",
    "zero_operator",
]
