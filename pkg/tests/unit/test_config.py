"""Tests for domain-specific configuration."""

import pytest
from pydantic import ValidationError

from app.core.config import Settings
from app.core.settings import AppConfig, NumericConfig, ResolveConfig, ServerConfig


class TestAppConfig:
    """AppConfig frozen immutability and property tests."""

    def test_frozen_immutability(self) -> None:
        config = AppConfig(name="test", env="development", debug=True)
        with pytest.raises(ValidationError):
            config.name = "changed"  # type: ignore[misc]

    def test_is_development(self) -> None:
        config = AppConfig(name="app", env="development", debug=True)
        assert config.is_development is True
        assert config.is_production is False

    def test_is_production(self) -> None:
        config = AppConfig(name="app", env="production", debug=False)
        assert config.is_production is True
        assert config.is_development is False

    def test_renders_json(self) -> None:
        assert AppConfig(name="a", env="staging", debug=False, log_format="json").renders_json
        assert not AppConfig(name="a", env="staging", debug=False).renders_json


class TestServerConfig:
    """ServerConfig field access tests."""

    def test_base_url(self) -> None:
        config = ServerConfig(host="127.0.0.1", port=8004)
        assert config.base_url == "http://127.0.0.1:8004"


class TestNumericConfig:
    """NumericConfig defaults and derived tolerances."""

    def test_defaults(self) -> None:
        config = NumericConfig()
        assert config.residual_tolerance == 1e-9
        assert config.near_parallel_tolerance == 1e-6
        assert config.rank_gap_ratio == 1e3
        assert config.restart_budget == 1000

    def test_relator_tolerance(self) -> None:
        config = NumericConfig(residual_tolerance=1e-8, relator_factor=10.0)
        assert config.relator_tolerance == pytest.approx(1e-7)

    def test_frozen_immutability(self) -> None:
        config = NumericConfig()
        with pytest.raises(ValidationError):
            config.restart_budget = 5  # type: ignore[misc]


class TestResolveConfig:
    """ResolveConfig defaults."""

    def test_defaults(self) -> None:
        config = ResolveConfig()
        assert config.coloring_edge_limit == 24
        assert config.default_seed == 0
        assert config.random_policy_trials == 100


class TestSettings:
    """Settings domain property delegation tests."""

    def test_domain_properties(self) -> None:
        s = Settings(
            _env_file=None,  # type: ignore[call-arg]
            app_env="production",
            restart_budget=50,
            coloring_edge_limit=12,
        )
        assert s.app.is_production is True
        assert s.numeric.restart_budget == 50
        assert s.resolve.coloring_edge_limit == 12
        assert s.server.port == 8004

    def test_env_override(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("RANK_GAP_RATIO", "500")
        monkeypatch.setenv("LOG_FORMAT", "json")
        s = Settings(_env_file=None)  # type: ignore[call-arg]
        assert s.numeric.rank_gap_ratio == 500
        assert s.app.renders_json is True

    def test_rejects_out_of_range(self) -> None:
        with pytest.raises(ValidationError):
            Settings(_env_file=None, restart_budget=0)  # type: ignore[call-arg]

    def test_is_development_delegates(self) -> None:
        s = Settings(_env_file=None, app_env="development")  # type: ignore[call-arg]
        assert s.is_development is True
