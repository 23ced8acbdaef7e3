"""Service layer for single solver runs."""

import asyncio
import logging
from collections.abc import Callable
from dataclasses import dataclass, replace

from ..models import (
    BilinearSpec,
    ParameterCheck,
    RunRecord,
    RunSummary,
    SequenceRule,
    SolveRequest,
    SolveResponse,
    SolverConfig,
    StepsizeConfig,
    Termination,
)
from ..operators import InclusionProblem, estimate_lipschitz
from ..problems import (
    as_inclusion,
    ball_sampler,
    benchmark_start,
    bilinear_from_spec,
    gap_function,
    gen_pseudo,
    known_solution_instance,
    pseudo_inclusion,
    pseudo_interior_solution,
)
from ..solvers import run, run_extragradient, run_forward_backward, validate_params
from ..utils.errors import NumericalFailureError, UsageError
from ..vecspace import Vector, make_rng, random_uniform_vector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PreparedProblem:
    """A generated problem together with its start point and optional gap."""

    problem: InclusionProblem
    x0: Vector
    gap: Callable[[Vector], float] | None = None


class SolverService:
    """Service for building problems and running one solver configuration."""

    def prepare(self, request: SolveRequest) -> PreparedProblem:
        """
        Generate the problem named by the request.

        Bilinear instances and their start point come from the stream of
        ``request.seed``; the pseudo-monotone instance carries x* = Sq when it is
        interior and a sampled Lipschitz bound.
        """
        if request.problem == "bilinear":
            spec = BilinearSpec(m=request.m, n=request.n, seed=request.seed)
            instance = bilinear_from_spec(spec)
            return PreparedProblem(
                problem=as_inclusion(instance),
                x0=benchmark_start(spec),
                gap=gap_function(instance),
            )

        rng = make_rng(request.seed)
        if request.problem == "pseudo":
            instance = gen_pseudo(rng, request.dim, request.radius)
            problem = pseudo_inclusion(instance)
            solution = pseudo_interior_solution(instance)
            if solution is not None:
                problem = problem.with_known_solution(solution)
            bound = estimate_lipschitz(
                problem.forward, ball_sampler(request.dim, request.radius), rng
            )
            problem = replace(problem, lipschitz_estimate=bound)
            return PreparedProblem(
                problem=problem, x0=random_uniform_vector(rng, request.dim)
            )

        return PreparedProblem(
            problem=known_solution_instance(request.dim),
            x0=random_uniform_vector(rng, request.dim),
        )

    def stepsize_config(
        self, request: SolveRequest, problem: InclusionProblem
    ) -> StepsizeConfig:
        """
        Explicit lam, lam = mu / L for the constant rule, or the adaptive rule.

        Raises:
            UsageError: If the constant rule needs L and the problem has none
        """
        if request.lam is not None:
            return StepsizeConfig(kind="constant", lam=request.lam)
        if request.stepsize == "constant":
            if problem.lipschitz is None:
                raise UsageError(f"{problem.name} has no Lipschitz constant; pass lam")
            return StepsizeConfig(kind="constant", lam=request.mu / problem.lipschitz)
        return StepsizeConfig(kind="adaptive", mu=request.mu, lambda1=request.lambda1)

    def solver_config(
        self, request: SolveRequest, problem: InclusionProblem
    ) -> SolverConfig:
        try:
            return SolverConfig(
                alpha=SequenceRule.constant(request.alpha),
                rho=SequenceRule.constant(request.rho),
                stepsize=self.stepsize_config(request, problem),
                eps=request.eps,
                max_iter=request.max_iter,
                seed=request.seed,
            )
        except ValueError as e:
            # pydantic's ValidationError is a ValueError
            raise UsageError(str(e)) from e

    def solve(self, request: SolveRequest) -> tuple[RunRecord, SolverConfig | None]:
        """
        Run the requested method.

        Returns:
            The run record and, for RIFBF, the solver configuration used

        Raises:
            UsageError: If the request is inconsistent or rejected by validate_params
        """
        prepared = self.prepare(request)
        problem = prepared.problem
        logger.info(f"Solving {problem.name} with {request.method}")

        if request.method == "forward_backward":
            lam = request.lam or self._lipschitz_fraction(request, problem)
            record = run_forward_backward(
                problem, lam, prepared.x0, request.eps, request.max_iter, prepared.gap
            )
            return record, None
        if request.method == "extragradient":
            record = run_extragradient(
                problem,
                prepared.x0,
                request.lam,
                request.eps,
                request.max_iter,
                prepared.gap,
            )
            return record, None

        config = self.solver_config(request, problem)
        return run(problem, config, prepared.x0, gap=prepared.gap), config

    def _lipschitz_fraction(
        self, request: SolveRequest, problem: InclusionProblem
    ) -> float:
        if problem.lipschitz is None:
            raise UsageError("forward-backward needs lam when L is unknown")
        return request.mu / problem.lipschitz

    def summarize(
        self,
        request: SolveRequest,
        record: RunRecord,
        config: SolverConfig | None = None,
        include_timings: bool = True,
    ) -> RunSummary:
        """Build the JSON summary; timings are left empty for byte-stable files."""
        config_dump = request.model_dump(exclude={"include_trace"})
        if config is not None:
            solver = config.model_dump(mode="json")
            solver["monitors"] = sorted(solver["monitors"])
            config_dump["solver"] = solver
        return RunSummary(
            config=config_dump,
            termination=record.termination,
            iterations=record.iterations_used,
            residual=record.final_residual,
            gap=record.final_gap,
            timings={"wall_time": record.wall_time} if include_timings else {},
        )

    def validate(self, alpha: float, rho: float, mu: float) -> ParameterCheck:
        return validate_params(alpha, rho, mu)

    async def solve_async(self, request: SolveRequest) -> SolveResponse:
        """
        Run a request off the event loop.

        Raises:
            UsageError: Invalid request
            NumericalFailureError: If the run produced non-finite values
        """
        try:
            record, config = await asyncio.to_thread(self.solve, request)
        except UsageError as e:
            logger.error(f"Rejected solve request: {str(e)}")
            raise

        if record.termination == Termination.NUMERICAL_FAILURE:
            raise NumericalFailureError(
                f"{record.method} produced non-finite values after "
                f"{record.iterations_used} iterations"
            )

        return SolveResponse(
            summary=self.summarize(request, record, config),
            trace=record.rows if request.include_trace else None,
        )


# Global service instance
solver_service = SolverService()
