"""Tests for the continuous-time system, its assumption check and its discretization."""

import numpy as np
import pytest

from src.dynamics import (
    DynamicsConfig,
    check_assumption,
    discretize_to_rifbf,
    integrate,
    observed_order,
)
from src.models import BilinearSpec, TimeFunction
from src.operators import (
    InclusionProblem,
    coercivity_kappa,
    fbf_residual_M,
    identity_resolvent,
    zero_operator,
)
from src.problems import (
    as_inclusion,
    benchmark_start,
    bilinear_from_spec,
    known_solution_instance,
)
from src.solvers import IterateState, StepsizeRule, rifbf_step
from src.utils.errors import UsageError
from src.vecspace import make_rng

GRID = [0.1 * j for j in range(101)]


def zero_problem(dim: int) -> InclusionProblem:
    return InclusionProblem(
        dim=dim,
        resolvent=identity_resolvent(dim),
        forward=zero_operator(dim),
        name="zero",
    )


def known_config(**overrides) -> DynamicsConfig:
    fields = dict(
        gamma=TimeFunction.constant(3.0),
        tau=TimeFunction.constant(1.0),
        lam=0.5,
        x0=np.linspace(2.0, 4.0, 4),
        v0=np.zeros(4),
        horizon=2.0,
        dt=0.1,
    )
    fields.update(overrides)
    return DynamicsConfig(**fields)


class TestTimeFunction:
    """Test suite for coefficient functions."""

    def test_affine_with_floor(self):
        """Test max(c0 + c1 t, floor) and its right derivative."""
        f = TimeFunction.affine(3.0, -1.0, floor=1.0)
        assert f.value(1.0) == 2.0
        assert f.value(5.0) == 1.0
        assert f.derivative(1.0) == -1.0
        assert f.derivative(5.0) == 0.0

    def test_table_interpolation(self):
        """Test linear interpolation held constant outside the table."""
        f = TimeFunction.table([0.0, 1.0, 2.0], [1.0, 3.0, 3.0])
        assert f.value(0.5) == 2.0
        assert f.value(10.0) == 3.0
        assert f.derivative(0.5) == 2.0
        assert f.derivative(1.5) == 0.0
        assert not f.analytic

    def test_rejects_negative_constant(self):
        """Test that coefficients must be nonnegative."""
        with pytest.raises(ValueError):
            TimeFunction.constant(-1.0)


class TestAssumptionCheck:
    """Test suite for the damping/relaxation conditions."""

    def test_constant_coefficients_pass(self):
        """Test gamma = 3, tau = 1, kappa = 0.5 gives margin 3.5."""
        report = check_assumption(
            TimeFunction.constant(3.0), TimeFunction.constant(1.0), 0.5, GRID
        )
        assert report.ok
        assert report.margin == pytest.approx(3.5)
        assert report.violation is None

    def test_weak_damping_fails(self):
        """Test gamma = 1, tau = 1, kappa = 0.2222 gives a negative margin."""
        report = check_assumption(
            TimeFunction.constant(1.0), TimeFunction.constant(1.0), 0.2222, GRID
        )
        assert not report.ok
        assert report.margin == pytest.approx(-0.7778)
        assert report.violation_time == 0.0

    def test_increasing_damping_flagged(self):
        """Test that gamma' > 0 is reported with the first offending time."""
        report = check_assumption(
            TimeFunction.affine(3.0, 0.5), TimeFunction.constant(1.0), 0.5, GRID
        )
        assert not report.ok
        assert report.violation_time == 0.0
        assert "gamma increases" in report.violation

    def test_decreasing_table_tau_flagged(self):
        """Test that a decreasing tabulated tau is caught by forward differences."""
        tau = TimeFunction.table([0.0, 5.0, 10.0], [1.0, 1.0, 0.5])
        report = check_assumption(TimeFunction.constant(3.0), tau, 0.5, GRID)
        assert not report.ok
        assert report.violation_time == pytest.approx(5.0)
        assert "tau decreases" in report.violation

    def test_margin_violation_reports_first_time(self):
        """Test that the margin violation carries the first failing time."""
        gamma = TimeFunction.affine(3.0, -1.0, floor=1.0)
        report = check_assumption(gamma, TimeFunction.constant(1.0), 0.5, GRID)
        assert not report.ok
        # 0.5 * gamma(t)^2 <= 1 first holds for gamma(t) <= sqrt(2)
        assert report.violation_time == pytest.approx(1.6)

    def test_vanishing_tau(self):
        """Test that tau = 0 on the grid is rejected."""
        with pytest.raises(UsageError):
            check_assumption(
                TimeFunction.constant(3.0), TimeFunction.constant(0.0), 0.5, GRID
            )

    @pytest.mark.parametrize("kappa", [0.0, 1.5])
    def test_kappa_range(self, kappa):
        """Test that kappa outside (0, 1] is rejected."""
        with pytest.raises(UsageError):
            check_assumption(
                TimeFunction.constant(3.0), TimeFunction.constant(1.0), kappa, GRID
            )

    def test_empty_grid(self):
        """Test that an empty grid is rejected."""
        with pytest.raises(UsageError):
            check_assumption(
                TimeFunction.constant(3.0), TimeFunction.constant(1.0), 0.5, []
            )


class TestDiscretization:
    """Test suite for the map from (gamma, tau, h) to (alpha, rho)."""

    def test_constant_sequences(self):
        """Test gamma = 1, tau = 4, h = 0.5 gives alpha = 0.5, rho = 1."""
        alphas, rhos = discretize_to_rifbf([1.0, 1.0], [4.0, 4.0], [0.5, 0.5])
        assert alphas == [0.5, 0.5]
        assert rhos == [1.0, 1.0]

    def test_unit_product_gives_zero_inertia(self):
        """Test that gamma h = 1 is allowed and gives alpha = 0."""
        alphas, _ = discretize_to_rifbf([2.0], [1.0], [0.5])
        assert alphas == [0.0]

    @pytest.mark.parametrize(
        "gammas,taus,steps",
        [
            ([3.0], [1.0], [0.5]),
            ([1.0], [1.0], [0.0]),
            ([1.0], [0.0], [0.5]),
            ([-1.0], [1.0], [0.5]),
            ([1.0, 1.0], [1.0], [0.5]),
        ],
    )
    def test_invalid_sequences(self, gammas, taus, steps):
        """Test the rejected inputs."""
        with pytest.raises(UsageError):
            discretize_to_rifbf(gammas, taus, steps)

    @pytest.mark.parametrize("draw", range(10))
    def test_explicit_scheme_equals_rifbf(self, draw):
        """Test that the explicit scheme and RIFBF produce the same iterates."""
        spec = BilinearSpec(m=10, n=10, seed=3)
        problem = as_inclusion(bilinear_from_spec(spec))
        lam = 0.5 / problem.lipschitz
        rng = make_rng(100 + draw)
        gammas = rng.uniform(0.5, 1.5, 50).tolist()
        taus = rng.uniform(0.5, 2.0, 50).tolist()
        steps = rng.uniform(0.1, 0.6, 50).tolist()
        alphas, rhos = discretize_to_rifbf(gammas, taus, steps)

        x0 = benchmark_start(spec)
        state = IterateState(k=1, x_prev=x0, x=x0, lam=lam)
        rule = StepsizeRule.constant(lam)
        x_prev, x = x0.copy(), x0.copy()
        for k in range(50):
            state = rifbf_step(problem, state, alphas[k], rhos[k], rule).next

            gamma, tau, h = gammas[k], taus[k], steps[k]
            z = x + (1 - gamma * h) * (x - x_prev)
            mz, _ = fbf_residual_M(problem, lam, z)
            x_prev, x = x, x + (1 - gamma * h) * (x - x_prev) - h * h * tau * mz

            np.testing.assert_allclose(state.x, x, rtol=0, atol=1e-12)


class TestIntegration:
    """Test suite for trajectories of the second-order system."""

    def test_config_validation(self):
        """Test that bad grids are rejected."""
        with pytest.raises(UsageError):
            known_config(dt=0.0)
        with pytest.raises(UsageError):
            known_config(horizon=0.01)
        with pytest.raises(UsageError):
            known_config(v0=np.zeros(3))

    def test_free_motion_closed_form(self):
        """Test M = 0 against x0 + v0 (1 - exp(-gamma t)) / gamma."""
        x0, v0, gamma = np.array([1.0, -2.0, 0.5]), np.array([0.3, 0.1, -1.0]), 2.0
        cfg = DynamicsConfig(
            gamma=TimeFunction.constant(gamma),
            tau=TimeFunction.constant(1.0),
            lam=0.5,
            x0=x0,
            v0=v0,
            horizon=5.0,
            dt=1e-3,
            integrator="rk4",
            sample_every=1000,
        )
        trajectory = integrate(zero_problem(3), cfg)
        expected = x0 + v0 * (1 - np.exp(-gamma * 5.0)) / gamma
        assert trajectory.completed
        assert trajectory.times[-1] == pytest.approx(5.0)
        np.testing.assert_allclose(trajectory.final_state, expected, atol=1e-6)
        assert all(r == 0.0 for r in trajectory.residual_norms)

    def test_equilibrium_at_solution(self):
        """Test that x0 = x*, v0 = 0 stays at x*."""
        problem = known_solution_instance(4)
        cfg = known_config(x0=problem.known_solution.copy(), horizon=1.0)
        trajectory = integrate(problem, cfg)
        for state in trajectory.states:
            np.testing.assert_array_equal(state, problem.known_solution)
        assert max(trajectory.velocity_norms) == 0.0

    def test_sampling(self):
        """Test that samples are taken every few steps and at the horizon."""
        trajectory = integrate(
            known_solution_instance(4), known_config(horizon=1.1, sample_every=4)
        )
        # 11 steps: samples at j = 0, 4, 8 and the last step
        assert len(trajectory.times) == 4
        assert trajectory.times[-1] == pytest.approx(1.1)
        assert len(trajectory.samples()) == 4

    @pytest.mark.parametrize("integrator,order", [("rk4", 4.0), ("euler", 1.0)])
    def test_observed_order(self, integrator, order):
        """Test the convergence order from three step sizes."""
        problem = known_solution_instance(4)
        ends = [
            integrate(problem, known_config(dt=dt, integrator=integrator)).final_state
            for dt in (0.1, 0.05, 0.025)
        ]
        assert observed_order(*ends) == pytest.approx(order, abs=0.5)

    def test_order_needs_distinct_states(self):
        """Test that identical end states have no order."""
        x = np.ones(2)
        with pytest.raises(UsageError):
            observed_order(x, x, x)

    def test_distance_to_solution_decreases(self):
        """Test that |x(t) - x*| is nonincreasing when the assumption holds."""
        problem = known_solution_instance(4)
        cfg = known_config(horizon=80.0, dt=0.01, sample_every=10)
        report = check_assumption(
            cfg.gamma, cfg.tau, coercivity_kappa(cfg.lam, 1.0), [0.0, 80.0]
        )
        assert report.ok

        trajectory = integrate(problem, cfg)
        solution = problem.known_solution
        distances = [np.linalg.norm(x - solution) for x in trajectory.states]
        assert all(b <= a + 1e-12 for a, b in zip(distances, distances[1:]))
        assert trajectory.residual_norms[-1] < 1e-2 * trajectory.residual_norms[0]
        assert trajectory.velocity_norms[-1] < 1e-2

    def test_non_finite_state_stops(self):
        """Test that a blow-up leaves a partial trajectory."""
        cfg = known_config(tau=TimeFunction.constant(1e308), horizon=1.0)
        trajectory = integrate(known_solution_instance(4), cfg)
        assert not trajectory.completed
        assert len(trajectory.times) < 11

    def test_benchmark_residual_decreases(self):
        """Test that |Mx| decreases along the saddle-point dynamics."""
        spec = BilinearSpec(m=20, n=20, seed=1)
        problem = as_inclusion(bilinear_from_spec(spec))
        lam = 0.5 / problem.lipschitz
        cfg = DynamicsConfig(
            gamma=TimeFunction.constant(3.0),
            tau=TimeFunction.constant(1.0),
            lam=lam,
            x0=benchmark_start(spec),
            v0=np.zeros(problem.dim),
            horizon=50.0,
            dt=0.05,
            sample_every=100,
        )
        kappa = coercivity_kappa(lam, problem.lipschitz)
        assert check_assumption(cfg.gamma, cfg.tau, kappa, [0.0, 50.0]).ok
        trajectory = integrate(problem, cfg)
        assert trajectory.completed
        assert trajectory.residual_norms[-1] < trajectory.residual_norms[0]

    @pytest.mark.slow
    def test_benchmark_residual_drops_hundredfold(self):
        """Test that doubling the horizon eventually gives |Mx(T)| < |Mx(0)| / 100."""
        spec = BilinearSpec(m=20, n=20, seed=1)
        problem = as_inclusion(bilinear_from_spec(spec))
        lam = 0.5 / problem.lipschitz
        horizon = 50.0
        while True:
            cfg = DynamicsConfig(
                gamma=TimeFunction.constant(3.0),
                tau=TimeFunction.constant(1.0),
                lam=lam,
                x0=benchmark_start(spec),
                v0=np.zeros(problem.dim),
                horizon=horizon,
                dt=0.05,
                sample_every=1000,
            )
            trajectory = integrate(problem, cfg)
            if trajectory.residual_norms[-1] < trajectory.residual_norms[0] / 100:
                break
            horizon *= 2
            assert horizon <= 6400, "residual did not drop within the horizon budget"
