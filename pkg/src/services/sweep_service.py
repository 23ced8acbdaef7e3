"""Service layer for (mu, alpha, rho, seed) sweeps over the bilinear benchmark."""

import asyncio
import logging
from pathlib import Path

from ..config import settings
from ..models import (
    Monitor,
    SequenceRule,
    SolverConfig,
    StepsizeConfig,
    SweepResult,
    SweepRow,
    SweepSpec,
    Termination,
)
from ..problems import as_inclusion, benchmark_start, bilinear_from_spec, gap_function
from ..solvers import run, validate_params
from ..utils.errors import UsageError
from ..utils.export import export_csv

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = [
    "mu",
    "alpha",
    "rho",
    "seed",
    "status",
    "iterations",
    "residual",
    "gap",
]

_STATUS = {
    Termination.CONVERGED: "converged",
    Termination.MAX_ITER: "cap",
    Termination.NUMERICAL_FAILURE: "numerical_failure",
}


class SweepService:
    """Service for running parameter grids concurrently."""

    def __init__(self, workers: int | None = None):
        self.workers = workers or settings.sweep_workers

    def is_feasible(self, mu: float, alpha: float, rho: float) -> bool:
        """Whether validate_params accepts the cell; out-of-range cells are not."""
        try:
            return validate_params(alpha, rho, mu).ok
        except UsageError:
            return False

    def _skipped(self, mu: float, alpha: float, rho: float, seed: int) -> SweepRow:
        return SweepRow(mu=mu, alpha=alpha, rho=rho, seed=seed, status="skipped")

    def run_cell(
        self, spec: SweepSpec, mu: float, alpha: float, rho: float, seed: int
    ) -> SweepRow:
        """
        Run one feasible cell.

        The constant rule uses lambda = mu / L; the adaptive rule starts at
        ``spec.lambda1``.
        """
        problem_spec = spec.problem.model_copy(update={"seed": seed})
        instance = bilinear_from_spec(problem_spec)
        problem = as_inclusion(instance)
        unit_balls = problem_spec.radii == (1.0, 1.0)

        if spec.stepsize == "constant":
            stepsize = StepsizeConfig(kind="constant", lam=mu / instance.lipschitz)
        else:
            stepsize = StepsizeConfig(kind="adaptive", mu=mu, lambda1=spec.lambda1)
        config = SolverConfig(
            alpha=SequenceRule.constant(alpha),
            rho=SequenceRule.constant(rho),
            stepsize=stepsize,
            eps=spec.eps,
            max_iter=spec.max_iter,
            seed=seed,
            monitors={Monitor.GAP} if unit_balls else set(),
        )

        try:
            record = run(
                problem,
                config,
                benchmark_start(problem_spec),
                gap=gap_function(instance) if unit_balls else None,
            )
        except UsageError as e:
            logger.warning(f"Cell mu={mu}, alpha={alpha}, rho={rho} rejected: {str(e)}")
            return self._skipped(mu, alpha, rho, seed)

        status = _STATUS[record.termination]
        return SweepRow(
            mu=mu,
            alpha=alpha,
            rho=rho,
            seed=seed,
            status=status,
            iterations=spec.max_iter if status == "cap" else record.iterations_used,
            residual=record.final_residual,
            gap=record.final_gap,
            wall_time=record.wall_time if spec.include_wall_time else None,
        )

    async def run_sweep(self, spec: SweepSpec) -> SweepResult:
        """
        Run every cell of the grid on a bounded pool of worker threads.

        Infeasible cells become ``skipped`` rows. Rows are sorted by
        (mu, alpha, rho, seed) after completion.
        """
        semaphore = asyncio.Semaphore(self.workers)
        done = 0

        async def guarded(mu: float, alpha: float, rho: float, seed: int) -> SweepRow:
            nonlocal done
            async with semaphore:
                row = await asyncio.to_thread(self.run_cell, spec, mu, alpha, rho, seed)
            done += 1
            logger.info(
                f"Sweep cell {done}/{len(tasks)}: mu={mu}, alpha={alpha}, rho={rho}, "
                f"seed={seed} -> {row.status} ({row.iterations})"
            )
            return row

        rows: list[SweepRow] = []
        tasks = []
        for mu in spec.mu:
            for alpha in spec.alpha:
                for rho in spec.rho:
                    for seed in spec.run_seeds:
                        if self.is_feasible(mu, alpha, rho):
                            tasks.append(guarded(mu, alpha, rho, seed))
                        else:
                            rows.append(self._skipped(mu, alpha, rho, seed))

        logger.info(
            f"Sweep over {spec.cell_count} cells: {len(tasks)} feasible, "
            f"{len(rows)} skipped, {self.workers} workers"
        )
        rows.extend(await asyncio.gather(*tasks))
        rows.sort(key=lambda row: row.sort_key)
        return SweepResult(spec=spec, rows=rows)

    def write(self, result: SweepResult, path: str | Path) -> Path:
        """Write the sweep table; the wall_time column only when requested."""
        extra = ["wall_time"] if result.spec.include_wall_time else []
        columns = SWEEP_COLUMNS + extra
        return export_csv(result.rows, path, columns=columns)


# Global service instance
sweep_service = SweepService()
