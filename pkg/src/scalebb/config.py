"""Configuration settings for scalebb."""

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from scalebb.core.schemas import ScalingConfig


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="SCALEBB_",
        case_sensitive=False,
    )

    # Logging
    log_level: str = Field(
        default="WARNING",
        description="Root logging level (DEBUG, INFO, WARNING, ERROR)",
    )
    log_to_file: bool = Field(
        default=False,
        description="Also write JSON lines to the rotating file logs/scalebb.log",
    )

    # Saturation and factorization tolerances
    saturation_rtol: float = Field(
        default=1e-9,
        description="Row classification tolerance relative to max(1, ||H||_inf)",
    )
    pivot_rtol: float = Field(
        default=1e-12,
        description="Smallest acceptable LU pivot relative to ||H_I||_inf",
    )

    # Local Improvement I
    li1_max_sweeps: int = Field(default=1000, ge=1)
    li1_improvement_rtol: float = Field(
        default=1e-12,
        description="Stop when a sweep improves the deficit objective by less than this",
    )

    # Brute-force oracle
    oracle_grid_step: float = Field(default=0.01, gt=0, le=0.5)
    oracle_refine_rounds: int = Field(default=30, ge=0)

    # Underestimator sampling
    underestimation_slack: float = Field(
        default=1e-12,
        description="Largest g - f accepted as roundoff",
    )

    # Experiments
    experiment_seed: int = Field(
        default=20131017,
        description="Seed used by the iteration-count reproduction",
    )
    jobs: int = Field(default=1, ge=1, description="Worker processes for experiments")

    def scaling_config(self) -> ScalingConfig:
        """Tolerances for the library layer."""
        return ScalingConfig(
            saturation_rtol=self.saturation_rtol,
            pivot_rtol=self.pivot_rtol,
            li1_max_sweeps=self.li1_max_sweeps,
            li1_improvement_rtol=self.li1_improvement_rtol,
        )


settings = Settings()
