"""Command-line front end: solve, sweep, dynamics, validate and serve."""

import argparse
import asyncio
import logging
from pathlib import Path

import numpy as np
from pydantic import ValidationError

from ..config import settings
from ..dynamics import DynamicsConfig, check_assumption, integrate
from ..models import (
    BilinearSpec,
    IterationRow,
    SolveRequest,
    SweepSpec,
    Termination,
    TimeFunction,
    TrajectorySample,
)
from ..operators import (
    InclusionProblem,
    coercivity_kappa,
    identity_resolvent,
    zero_operator,
)
from ..problems import (
    as_inclusion,
    benchmark_start,
    bilinear_from_spec,
    dump_matrix_csv,
    known_solution_instance,
)
from ..services import SweepService, solver_service, sweep_service
from ..utils.errors import UsageError
from ..utils.export import export_csv, export_json
from ..vecspace import Vector, make_rng, random_uniform_vector

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CAP = 2


class CommandParser(argparse.ArgumentParser):
    """Argument parser that reports bad flags as usage errors (exit status 1)."""

    def error(self, message: str):
        raise UsageError(message)


def _add_problem_flags(parser: argparse.ArgumentParser, choices: list[str]) -> None:
    parser.add_argument("--problem", choices=choices, default="bilinear")
    parser.add_argument("--m", type=int, default=500, help="bilinear: dim of theta")
    parser.add_argument("--n", type=int, default=500, help="bilinear: dim of phi")
    parser.add_argument("--dim", type=int, default=20, help="other problems: dimension")
    parser.add_argument("--seed", type=int, default=settings.default_seed)


def build_parser() -> argparse.ArgumentParser:
    parser = CommandParser(
        prog="rifbf", description="Relaxed inertial forward-backward-forward toolkit"
    )
    parser.add_argument(
        "--log-level",
        type=str.upper,
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        default=settings.log_level.upper(),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run one configuration")
    _add_problem_flags(solve, ["bilinear", "pseudo", "known"])
    solve.add_argument("--radius", type=float, default=5.0, help="pseudo: ball radius")
    solve.add_argument(
        "--method",
        choices=["rifbf", "forward_backward", "extragradient"],
        default="rifbf",
    )
    solve.add_argument("--alpha", type=float, default=0.0)
    solve.add_argument("--rho", type=float, default=1.0)
    mode = solve.add_mutually_exclusive_group(required=True)
    mode.add_argument("--lambda", dest="lam", type=float, help="constant stepsize")
    mode.add_argument(
        "--mu", type=float, help="adaptive factor; the constant rule uses mu / L"
    )
    solve.add_argument("--lambda1", type=float, help="adaptive start stepsize")
    solve.add_argument(
        "--stepsize", choices=["constant", "adaptive"], default="adaptive"
    )
    solve.add_argument("--eps", type=float, default=settings.default_eps)
    solve.add_argument("--max-iter", type=int, default=settings.default_max_iter)
    solve.add_argument("--output-dir", default=settings.output_dir)
    solve.add_argument("--name", default="run", help="prefix of the output files")
    solve.add_argument(
        "--timings", action="store_true", help="record wall time in the summary"
    )
    solve.add_argument(
        "--dump-matrices",
        metavar="DIR",
        help="bilinear: also write A, a and b as CSV files to DIR",
    )

    sweep = sub.add_parser("sweep", help="run a parameter grid from a JSON spec")
    sweep.add_argument("spec", help="JSON file with the SweepSpec fields")
    sweep.add_argument("--output", help="CSV path, overrides the one in the sweep file")
    sweep.add_argument("--workers", type=int, default=settings.sweep_workers)

    dynamics = sub.add_parser("dynamics", help="simulate the continuous-time system")
    _add_problem_flags(dynamics, ["bilinear", "known", "zero"])
    dynamics.add_argument("--gamma", type=float, default=3.0)
    dynamics.add_argument("--gamma-slope", type=float, default=0.0)
    dynamics.add_argument("--tau", type=float, default=1.0)
    dynamics.add_argument("--tau-slope", type=float, default=0.0)
    dynamics.add_argument("--lambda", dest="lam", type=float, help="stepsize inside M")
    dynamics.add_argument(
        "--lambda-factor", type=float, default=0.5, help="lambda = factor / L"
    )
    dynamics.add_argument("--horizon", type=float, default=10.0)
    dynamics.add_argument("--dt", type=float, default=1e-2)
    dynamics.add_argument("--integrator", choices=["euler", "rk4"], default="rk4")
    dynamics.add_argument("--sample-every", type=int, default=1)
    dynamics.add_argument(
        "--strict", action="store_true", help="abort on assumption failure"
    )
    dynamics.add_argument(
        "--output", default=str(Path(settings.output_dir) / "trajectory.csv")
    )

    validate = sub.add_parser("validate", help="check (alpha, rho, mu) only")
    validate.add_argument("--alpha", type=float, required=True)
    validate.add_argument("--rho", type=float, required=True)
    validate.add_argument("--mu", type=float, required=True)

    serve = sub.add_parser("serve", help="start the HTTP API")
    serve.add_argument("--host", default="0.0.0.0")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _solve_request(args: argparse.Namespace) -> SolveRequest:
    if args.lam is not None and args.lambda1 is not None:
        raise UsageError("--lambda1 belongs to the adaptive rule, use it with --mu")
    fields = dict(
        problem=args.problem,
        m=args.m,
        n=args.n,
        dim=args.dim,
        radius=args.radius,
        seed=args.seed,
        method=args.method,
        alpha=args.alpha,
        rho=args.rho,
        lam=args.lam,
        stepsize="constant" if args.lam is not None else args.stepsize,
        eps=args.eps,
        max_iter=args.max_iter,
    )
    if args.mu is not None:
        fields["mu"] = args.mu
    if args.lambda1 is not None:
        fields["lambda1"] = args.lambda1
    try:
        return SolveRequest(**fields)
    except ValidationError as e:
        raise UsageError(str(e)) from e


def cmd_solve(args: argparse.Namespace) -> int:
    """Run one configuration and write <name>_trace.csv and <name>_summary.json."""
    request = _solve_request(args)
    if args.dump_matrices and request.problem != "bilinear":
        raise UsageError("--dump-matrices needs --problem bilinear")
    record, config = solver_service.solve(request)

    output_dir = Path(args.output_dir)
    export_csv(record.rows, output_dir / f"{args.name}_trace.csv", model=IterationRow)
    summary = solver_service.summarize(
        request, record, config, include_timings=args.timings
    )
    export_json(summary, output_dir / f"{args.name}_summary.json")
    if args.dump_matrices:
        spec = BilinearSpec(m=request.m, n=request.n, seed=request.seed)
        dump_matrix_csv(bilinear_from_spec(spec), args.dump_matrices)

    print(
        f"{record.method}: {record.termination.value} after {record.iterations_used} "
        f"iterations, residual {record.final_residual}"
    )
    if record.termination == Termination.NUMERICAL_FAILURE:
        return EXIT_ERROR
    if record.termination == Termination.MAX_ITER:
        return EXIT_CAP
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    """Run the grid of a SweepSpec file and write its CSV table."""
    try:
        spec = SweepSpec.model_validate_json(Path(args.spec).read_text())
    except ValidationError as e:
        raise UsageError(f"invalid sweep spec {args.spec}: {str(e)}") from e

    service = sweep_service
    if args.workers != sweep_service.workers:
        service = SweepService(args.workers)
    result = asyncio.run(service.run_sweep(spec))
    output = args.output or spec.output or str(Path(settings.output_dir) / "sweep.csv")
    service.write(result, output)

    counts: dict[str, int] = {}
    for row in result.rows:
        counts[row.status] = counts.get(row.status, 0) + 1
    print(f"Sweep of {len(result.rows)} cells written to {output}: {counts}")
    return EXIT_OK


def _dynamics_problem(args: argparse.Namespace) -> tuple[InclusionProblem, Vector]:
    if args.problem == "bilinear":
        spec = BilinearSpec(m=args.m, n=args.n, seed=args.seed)
        return as_inclusion(bilinear_from_spec(spec)), benchmark_start(spec)
    rng = make_rng(args.seed)
    if args.problem == "known":
        return known_solution_instance(args.dim), random_uniform_vector(rng, args.dim)
    problem = InclusionProblem(
        dim=args.dim,
        resolvent=identity_resolvent(args.dim),
        forward=zero_operator(args.dim),
        name=f"zero(dim={args.dim})",
    )
    return problem, random_uniform_vector(rng, args.dim)


def _time_function(value: float, slope: float) -> TimeFunction:
    if slope == 0.0:
        return TimeFunction.constant(value)
    return TimeFunction.affine(value, slope)


def cmd_dynamics(args: argparse.Namespace) -> int:
    """Check (gamma, tau), integrate and write the sampled diagnostics."""
    problem, x0 = _dynamics_problem(args)
    lipschitz = problem.lipschitz
    if args.lam is not None:
        lam = args.lam
    elif lipschitz is not None:
        lam = args.lambda_factor / lipschitz
    else:
        lam = args.lambda_factor
    kappa = coercivity_kappa(lam, lipschitz) if lipschitz is not None else 1.0

    cfg = DynamicsConfig(
        gamma=_time_function(args.gamma, args.gamma_slope),
        tau=_time_function(args.tau, args.tau_slope),
        lam=lam,
        x0=x0,
        v0=np.zeros(problem.dim),
        horizon=args.horizon,
        dt=args.dt,
        integrator=args.integrator,
        sample_every=args.sample_every,
    )
    grid = [j * cfg.dt for j in range(cfg.steps + 1)]
    report = check_assumption(cfg.gamma, cfg.tau, kappa, grid)
    if report.ok:
        print(f"Assumption ok: margin {report.margin:.6g} (kappa = {kappa:.6g})")
    else:
        print(f"Assumption violated: {report.violation}")
        if args.strict:
            return EXIT_ERROR
        logger.warning(f"Proceeding despite assumption violation: {report.violation}")

    trajectory = integrate(problem, cfg)
    export_csv(trajectory.samples(), args.output, model=TrajectorySample)
    print(
        f"Trajectory of {len(trajectory.times)} samples written to {args.output}; "
        f"||Mx|| {trajectory.residual_norms[0]:.3e} -> "
        f"{trajectory.residual_norms[-1]:.3e}"
    )
    return EXIT_OK if trajectory.completed else EXIT_ERROR


def cmd_validate(args: argparse.Namespace) -> int:
    check = solver_service.validate(args.alpha, args.rho, args.mu)
    if check.ok:
        print(f"ok: rho = {args.rho:g} < {check.bound:.6g}")
        return EXIT_OK
    print(f"rejected: {check.violation}")
    return EXIT_ERROR


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run(
        "main:app",
        host=args.host,
        port=args.port,
        reload=settings.debug,
        log_level=settings.log_level.lower(),
    )
    return EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "sweep": cmd_sweep,
    "dynamics": cmd_dynamics,
    "validate": cmd_validate,
    "serve": cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    """
    Parse arguments and run a subcommand.

    Returns:
        0 on success or convergence, 2 when a solve hit max_iter, 1 on usage,
        numerical or I/O errors
    """
    try:
        args = build_parser().parse_args(argv)
        logging.getLogger().setLevel(args.log_level)
        return COMMANDS[args.command](args)
    except UsageError as e:
        print(f"usage error: {str(e)}")
        return EXIT_ERROR
    except OSError as e:
        logger.error(f"I/O failure: {str(e)}")
        print(f"I/O error: {str(e)}")
        return EXIT_ERROR
