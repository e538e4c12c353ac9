"""Domain-specific configuration models."""

from app.core.settings.app_config import AppConfig
from app.core.settings.numeric_config import NumericConfig
from app.core.settings.resolve_config import ResolveConfig
from app.core.settings.server_config import ServerConfig

__all__ = [
    "AppConfig",
    "NumericConfig",
    "ResolveConfig",
    "ServerConfig",
]
