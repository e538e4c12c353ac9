"""Application configuration using Pydantic Settings V2."""

from functools import cached_property
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from app.core.settings import (
    AppConfig,
    NumericConfig,
    ResolveConfig,
    ServerConfig,
)


class Settings(BaseSettings):
    """Application settings loaded from environment variables.

    Flat fields are loaded directly from environment variables.
    Domain properties provide grouped access (e.g. settings.numeric.rank_gap_ratio).
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # App
    app_name: str = Field(
        default="sl3-webs",
        description="Application name",
    )
    app_env: Literal["development", "staging", "production"] = Field(
        default="development",
        description="Application environment",
    )
    debug: bool = Field(
        default=False,
        description="Debug mode",
    )
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = Field(
        default="WARNING",
        description="Minimum structlog level",
    )
    log_format: Literal["console", "json"] = Field(
        default="console",
        description="Log renderer",
    )

    # Server
    host: str = Field(
        default="127.0.0.1",
        description="Server host",
    )
    port: int = Field(
        default=8004,
        ge=1,
        le=65535,
        description="Server port",
    )

    # Numeric verifier
    residual_tolerance: float = Field(
        default=1e-9,
        gt=0,
        le=1e-3,
        description="Maximum pairwise Hermitian product accepted at a vertex",
    )
    line_tolerance: float = Field(
        default=1e-9,
        gt=0,
        le=1e-3,
        description="Two lines coincide when 1 - |<v, w>| is below this",
    )
    near_parallel_tolerance: float = Field(
        default=1e-6,
        gt=0,
        le=1e-1,
        description="Pairs closer than this to parallel force a re-randomization",
    )
    rank_tolerance: float = Field(
        default=1e-6,
        gt=0,
        le=1e-2,
        description="Singular values below this times the largest count as zero",
    )
    rank_gap_ratio: float = Field(
        default=1e3,
        ge=1,
        description="Minimum spectral gap around the rank cut before warning",
    )
    relator_factor: float = Field(
        default=10.0,
        ge=1,
        description="Relator check tolerance as a multiple of the residual tolerance",
    )
    restart_budget: int = Field(
        default=1000,
        ge=1,
        le=100_000,
        description="Restarts allowed before representation search gives up",
    )
    census_workers: int = Field(
        default=1,
        ge=1,
        le=64,
        description="Thread pool size for component census",
    )

    # Resolution
    coloring_edge_limit: int = Field(
        default=24,
        ge=1,
        le=40,
        description="Largest edge count accepted by the brute-force coloring count",
    )
    default_seed: int = Field(
        default=0,
        ge=0,
        description="Seed used when none is given",
    )
    random_policy_trials: int = Field(
        default=100,
        ge=1,
        description="Random move policies tried by the invariance check",
    )

    # --- Domain properties ---

    @cached_property
    def app(self) -> AppConfig:
        """Application environment configuration."""
        return AppConfig(
            name=self.app_name,
            env=self.app_env,
            debug=self.debug,
            log_level=self.log_level,
            log_format=self.log_format,
        )

    @cached_property
    def server(self) -> ServerConfig:
        """Server configuration."""
        return ServerConfig(
            host=self.host,
            port=self.port,
        )

    @cached_property
    def numeric(self) -> NumericConfig:
        """SU(3) numeric verifier configuration."""
        return NumericConfig(
            residual_tolerance=self.residual_tolerance,
            line_tolerance=self.line_tolerance,
            near_parallel_tolerance=self.near_parallel_tolerance,
            rank_tolerance=self.rank_tolerance,
            rank_gap_ratio=self.rank_gap_ratio,
            relator_factor=self.relator_factor,
            restart_budget=self.restart_budget,
            census_workers=self.census_workers,
        )

    @cached_property
    def resolve(self) -> ResolveConfig:
        """Resolution tree and coloring configuration."""
        return ResolveConfig(
            coloring_edge_limit=self.coloring_edge_limit,
            default_seed=self.default_seed,
            random_policy_trials=self.random_policy_trials,
        )

    # --- Convenience properties (delegate to domain configs) ---

    @property
    def is_development(self) -> bool:
        """Check if running in development mode."""
        return self.app.is_development


# Global settings instance
settings = Settings()
