"""Unit tests for vector arithmetic, seeded randomness and spectral norms."""

import numpy as np
import pytest

from src.utils.errors import ConvergenceError, UsageError
from src.vecspace import (
    as_vector,
    dot,
    make_rng,
    norm,
    random_ball_point,
    random_uniform_matrix,
    random_uniform_vector,
    spectral_norm,
)


class TestArithmetic:
    """Test suite for dot products and norms."""

    def test_dot_and_norm(self):
        """Test the Euclidean inner product and norm."""
        u = as_vector([3.0, 4.0])
        v = as_vector([1.0, -1.0])
        assert dot(u, v) == -1.0
        assert norm(u) == 5.0

    def test_dot_dimension_mismatch(self):
        """Test that vectors of different dimension are rejected."""
        with pytest.raises(UsageError):
            dot(np.ones(2), np.ones(3))


class TestRandomness:
    """Test suite for the seeded generator."""

    def test_same_seed_same_stream(self):
        """Test that a seed fixes the stream."""
        first = random_uniform_vector(make_rng(7), 5)
        second = random_uniform_vector(make_rng(7), 5)
        np.testing.assert_array_equal(first, second)

    def test_seed_out_of_range(self):
        """Test that negative seeds are rejected."""
        with pytest.raises(UsageError):
            make_rng(-1)

    def test_uniform_range(self):
        """Test that draws stay in [lo, hi]."""
        x = random_uniform_vector(make_rng(1), 1000, lo=-2.0, hi=3.0)
        assert x.min() >= -2.0
        assert x.max() <= 3.0

    def test_uniform_empty_interval(self):
        """Test that lo >= hi is rejected."""
        with pytest.raises(UsageError):
            random_uniform_vector(make_rng(1), 3, lo=1.0, hi=1.0)

    def test_matrix_shape(self):
        """Test the shape of random matrices."""
        assert random_uniform_matrix(make_rng(1), 3, 4).shape == (3, 4)

    def test_ball_points_inside(self):
        """Test that ball samples lie in the ball."""
        rng = make_rng(3)
        for _ in range(100):
            assert np.linalg.norm(random_ball_point(rng, 6, 2.5)) <= 2.5 + 1e-12


class TestSpectralNorm:
    """Test suite for power-iteration spectral norms."""

    def test_matches_svd(self):
        """Test agreement with the largest singular value from an SVD."""
        matrix = random_uniform_matrix(make_rng(1), 20, 20)
        expected = np.linalg.svd(matrix, compute_uv=False)[0]
        assert spectral_norm(matrix) == pytest.approx(expected, rel=1e-8)

    def test_rectangular_matches_svd(self):
        """Test a rectangular matrix."""
        matrix = random_uniform_matrix(make_rng(2), 7, 13)
        expected = np.linalg.svd(matrix, compute_uv=False)[0]
        assert spectral_norm(matrix) == pytest.approx(expected, rel=1e-8)

    def test_zero_matrix(self):
        """Test that the zero matrix has norm 0."""
        assert spectral_norm(np.zeros((3, 3))) == 0.0

    def test_diagonal(self):
        """Test a diagonal matrix."""
        assert spectral_norm(np.diag([3.0, 1.0])) == pytest.approx(3.0, rel=1e-10)

    def test_start_vector_in_null_space(self):
        """Test the restart when the all-ones start is annihilated."""
        norm_estimate = spectral_norm(np.array([[1.0, -1.0]]))
        assert norm_estimate == pytest.approx(np.sqrt(2.0), rel=1e-8)

    def test_start_vector_orthogonal_to_top_singular_space(self):
        """Test the restart when the all-ones start is a lower singular vector."""
        v1 = np.array([1.0, 1.0]) / np.sqrt(2.0)
        v2 = np.array([1.0, -1.0]) / np.sqrt(2.0)
        matrix = np.outer([1.0, 0.0], v1) + 2.0 * np.outer([0.0, 1.0], v2)
        expected = np.linalg.svd(matrix, compute_uv=False)[0]
        assert expected == pytest.approx(2.0)
        assert spectral_norm(matrix) == pytest.approx(expected, rel=1e-8)

    def test_transpose_agrees(self):
        """Test that M and M^T give the same norm."""
        matrix = random_uniform_matrix(make_rng(6), 9, 4)
        assert spectral_norm(matrix) == pytest.approx(
            spectral_norm(matrix.T), rel=1e-8
        )

    def test_budget_exhausted(self):
        """Test that slow convergence raises with the last estimate."""
        with pytest.raises(ConvergenceError) as excinfo:
            spectral_norm(np.diag([1.0, 0.999999]), max_iter=2)
        assert 0.999999 <= excinfo.value.estimate <= 1.0

    def test_non_finite_rejected(self):
        """Test that NaN entries are rejected."""
        with pytest.raises(UsageError):
            spectral_norm(np.array([[np.nan, 1.0]]))
