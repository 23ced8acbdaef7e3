"""Application configuration management."""

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings with environment variable support."""

    # API Configuration
    api_title: str = "RIFBF Solver Toolkit"
    api_version: str = "1.0.0"
    api_description: str = (
        "Relaxed inertial forward-backward-forward solvers for monotone inclusions"
    )
    api_prefix: str = "/api/v1"

    # Solver defaults
    default_mu: float = 0.5
    default_lambda1: float = 1.0
    default_eps: float = 1e-5
    default_max_iter: int = 10_000
    default_seed: int = 1
    extragradient_factor: float = 0.45  # lambda = factor / L, inside (0, 1/(2L))

    # Monitor tolerances
    monitor_slack: float = 1e-9
    lips_relative_slack: float = 1e-12
    monotonicity_tolerance: float = 1e-12

    # Spectral norm estimation
    spectral_tol: float = 1e-12
    spectral_max_iter: int = 10_000

    # Sampled Lipschitz estimate for operators without a known constant
    lipschitz_samples: int = 100_000
    lipschitz_safety: float = 1.1

    # Reporting
    csv_float_digits: int = 17
    output_dir: str = "results"

    # Sweeps
    sweep_workers: int = 4
    instance_cache_ttl_seconds: int = 3600  # generated bilinear instances

    # Development Configuration
    debug: bool = False
    log_level: str = "INFO"

    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8")


# Global settings instance
settings = Settings()
