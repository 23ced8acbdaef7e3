"""Solver engine package."""

from .baselines import (
    extragradient_step,
    fb_step,
    run_extragradient,
    run_forward_backward,
)
from .diagnostics import (
    delta_k,
    descent_violations,
    detect_k0,
    feasible_grid,
    limiting_delta,
    lips_violations,
    lyapunov_H,
    main_inequality_violations,
    monitor_main_inequality,
    rho_bound,
    summed_descent,
    validate_params,
    warn_nonpositive_delta,
)
from .rifbf import (
    IterateState,
    StepResult,
    fbf_config,
    ifbf_config,
    rfbf_config,
    rifbf_step,
    run,
)
from .stepsize import StepsizeRule, check_lips_inequality, next_lambda

__all__ = [
    "IterateState",
    "StepResult",
    "StepsizeRule",
    "check_lips_inequality",
    "delta_k",
    "descent_violations",
    "detect_k0",
    "extragradient_step",
    "fb_step",
    "fbf_config",
    "feasible_grid",
    "ifbf_config",
    "limiting_delta",
    "lips_violations",
    "lyapunov_H",
    "main_inequality_violations",
    "monitor_main_inequality",
    "next_lambda",
    "rfbf_config",
    "rho_bound",
    "rifbf_step",
    "run",
    "run_extragradient",
    "run_forward_backward",
    "summed_descent",
    "validate_params",
    "warn_nonpositive_delta",
]
