"""Integration tests for API endpoints."""

from unittest.mock import patch

import pytest
from fastapi.testclient import TestClient

from main import app
from src.config import settings
from src.utils.errors import NumericalFailureError, UsageError


@pytest.fixture
def client():
    """Create test client."""
    return TestClient(app)


class TestAPI:
    """Test suite for API endpoints."""

    def test_root_endpoint(self, client):
        """Test root endpoint."""
        response = client.get("/")
        assert response.status_code == 200

        data = response.json()
        assert data["service"] == settings.api_title
        assert data["version"] == settings.api_version

    def test_health_endpoint(self, client):
        """Test health check endpoint."""
        response = client.get(f"{settings.api_prefix}/health")
        assert response.status_code == 200
        assert response.json() == {"status": "healthy", "service": "rifbf-solver"}

    def test_validate_admissible(self, client):
        """Test an admissible parameter triple."""
        response = client.post(
            f"{settings.api_prefix}/validate",
            json={"alpha": 0.0, "rho": 1.0, "mu": 0.5},
        )
        assert response.status_code == 200

        data = response.json()
        assert data["ok"] is True
        assert data["bound"] == pytest.approx(4.0 / 3.0)
        assert data["violation"] is None

    def test_validate_rejected(self, client):
        """Test that a rejected triple is reported, not raised."""
        response = client.post(
            f"{settings.api_prefix}/validate",
            json={"alpha": 0.9, "rho": 1.5, "mu": 0.5},
        )
        assert response.status_code == 200
        assert response.json()["ok"] is False

    def test_validate_out_of_range(self, client):
        """Test that alpha outside [0, 1) returns 400."""
        response = client.post(
            f"{settings.api_prefix}/validate",
            json={"alpha": 1.5, "rho": 1.0, "mu": 0.5},
        )
        assert response.status_code == 400
        assert "Invalid parameter" in response.json()["detail"]

    def test_solve_known_instance(self, client):
        """Test a real solve on the known-solution instance."""
        response = client.post(
            f"{settings.api_prefix}/solve",
            json={
                "problem": "known",
                "dim": 6,
                "alpha": 0.1,
                "rho": 1.0,
                "include_trace": True,
            },
        )
        assert response.status_code == 200

        data = response.json()
        assert data["summary"]["termination"] == "converged"
        assert len(data["trace"]) == data["summary"]["iterations"]
        assert data["trace"][-1]["residual"] <= settings.default_eps

    def test_solve_without_trace(self, client):
        """Test that the trace is omitted unless requested."""
        response = client.post(
            f"{settings.api_prefix}/solve", json={"problem": "known", "dim": 4}
        )
        assert response.status_code == 200
        assert response.json()["trace"] is None

    def test_solve_rejected_parameters(self, client):
        """Test that parameters outside the admissible region return 400."""
        response = client.post(
            f"{settings.api_prefix}/solve",
            json={"problem": "known", "dim": 4, "alpha": 0.9, "rho": 1.5},
        )
        assert response.status_code == 400

    def test_solve_invalid_mu(self, client):
        """Test request validation for mu outside (0, 1)."""
        response = client.post(
            f"{settings.api_prefix}/solve", json={"problem": "known", "mu": 2.0}
        )
        assert response.status_code == 422

    @patch("src.api.routes.solver_service.solve_async")
    def test_solve_numerical_failure(self, mock_solve, client):
        """Test that non-finite runs return 422."""
        mock_solve.side_effect = NumericalFailureError("non-finite values")

        response = client.post(
            f"{settings.api_prefix}/solve", json={"problem": "known", "dim": 4}
        )
        assert response.status_code == 422
        assert "non-finite" in response.json()["detail"]

    @patch("src.api.routes.solver_service.solve_async")
    def test_solve_usage_error(self, mock_solve, client):
        """Test that usage errors from the service return 400."""
        mock_solve.side_effect = UsageError("pseudo has no Lipschitz constant")

        response = client.post(
            f"{settings.api_prefix}/solve", json={"problem": "pseudo"}
        )
        assert response.status_code == 400

    @patch("src.api.routes.solver_service.solve_async")
    def test_solve_internal_error(self, mock_solve, client):
        """Test that unexpected errors return 500."""
        mock_solve.side_effect = RuntimeError("Unexpected error")

        response = client.post(
            f"{settings.api_prefix}/solve", json={"problem": "known", "dim": 4}
        )
        assert response.status_code == 500

        data = response.json()
        assert (
            data["detail"] == "Internal server error occurred while processing request"
        )

    def test_sweep_endpoint(self, client):
        """Test a small sweep with one skipped cell."""
        response = client.post(
            f"{settings.api_prefix}/sweep",
            json={
                "mu": [0.5],
                "alpha": [0.0, 0.9],
                "rho": [1.0],
                "eps": 1e-6,
                "problem": {"m": 5, "n": 5, "seed": 3},
            },
        )
        assert response.status_code == 200

        rows = response.json()["rows"]
        assert [row["status"] for row in rows] == ["converged", "skipped"]

    def test_sweep_invalid_spec(self, client):
        """Test that an empty grid is rejected."""
        response = client.post(
            f"{settings.api_prefix}/sweep",
            json={"mu": [], "alpha": [0.0], "rho": [1.0]},
        )
        assert response.status_code == 422
