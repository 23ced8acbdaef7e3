"""Unit tests for the sweep service."""

import pytest

from src.models import BilinearSpec, SolveRequest, SweepRow, SweepSpec
from src.services import solver_service
from src.services.sweep_service import SWEEP_COLUMNS, SweepService
from src.utils.export import read_csv


def small_spec(**overrides) -> SweepSpec:
    values = dict(
        mu=[0.5],
        alpha=[0.0, 0.1],
        rho=[1.0, 1.5],
        eps=1e-6,
        max_iter=10_000,
        problem=BilinearSpec(m=10, n=10, seed=1),
    )
    values.update(overrides)
    return SweepSpec(**values)


class TestSweepService:
    """Test suite for SweepService."""

    def setup_method(self):
        """Setup test fixtures."""
        self.service = SweepService(workers=2)

    def test_feasibility(self):
        """Test the admissible region and out-of-range cells."""
        assert self.service.is_feasible(0.5, 0.0, 1.0)
        assert not self.service.is_feasible(0.5, 0.9, 1.5)
        assert not self.service.is_feasible(0.5, 0.0, -1.0)

    def test_spec_rejects_mu_outside_unit_interval(self):
        """Test that SweepSpec rejects mu = 1."""
        with pytest.raises(ValueError):
            small_spec(mu=[1.0])

    @pytest.mark.asyncio
    async def test_sweep_rows_sorted_and_skipped(self):
        """Test that infeasible cells are skipped and rows are sorted."""
        result = await self.service.run_sweep(small_spec())
        assert len(result.rows) == 4
        keys = [row.sort_key for row in result.rows]
        assert keys == sorted(keys)

        # alpha = 0.1, mu = 0.5 bounds rho near 1.17
        skipped = result.cell(0.5, 0.1, 1.5, 1)
        assert skipped is not None and skipped.status == "skipped"
        assert skipped.iterations is None

        feasible = result.cell(0.5, 0.0, 1.0, 1)
        assert feasible is not None and feasible.status == "converged"
        assert feasible.residual <= 1e-6
        assert feasible.gap is not None

    @pytest.mark.asyncio
    async def test_cap_rows_report_max_iter(self):
        """Test that capped cells record max_iter iterations."""
        spec = small_spec(alpha=[0.0], rho=[1.0], eps=1e-300, max_iter=7)
        result = await self.service.run_sweep(spec)
        assert [row.status for row in result.rows] == ["cap"]
        assert result.rows[0].iterations == 7

    @pytest.mark.asyncio
    async def test_reruns_are_deterministic(self):
        """Test that two sweeps of the same spec give equal rows."""
        spec = small_spec(seeds=[1, 2])
        first = await self.service.run_sweep(spec)
        second = await SweepService(workers=1).run_sweep(spec)
        assert first.rows == second.rows
        assert all(row.wall_time is None for row in first.rows)

    @pytest.mark.asyncio
    async def test_single_cell_matches_solver_service(self):
        """Test that a 1 x 1 x 1 grid reproduces a direct constant-stepsize solve."""
        spec = small_spec(alpha=[0.0], rho=[1.0])
        result = await self.service.run_sweep(spec)
        row = result.rows[0]

        request = SolveRequest(
            problem="bilinear",
            m=10,
            n=10,
            seed=1,
            stepsize="constant",
            mu=0.5,
            eps=1e-6,
        )
        record, _ = solver_service.solve(request)
        assert row.iterations == record.iterations_used
        assert row.residual == record.final_residual
        assert row.gap == record.final_gap

    @pytest.mark.asyncio
    async def test_write_columns(self, tmp_path):
        """Test that wall_time is written only when requested."""
        result = await self.service.run_sweep(small_spec(alpha=[0.0], rho=[1.0]))
        path = self.service.write(result, tmp_path / "sweep.csv")
        header = path.read_text().splitlines()[0]
        assert header.split(",") == SWEEP_COLUMNS

        timed = await self.service.run_sweep(
            small_spec(alpha=[0.0], rho=[1.0], include_wall_time=True)
        )
        path = self.service.write(timed, tmp_path / "timed.csv")
        assert path.read_text().splitlines()[0].split(",")[-1] == "wall_time"
        assert read_csv(path, SweepRow)[0].wall_time is not None
