"""Global dependencies for the application."""

from functools import lru_cache

from app.core.config import settings
from app.services.analysis_service import AnalysisService


@lru_cache
def get_analysis_service() -> AnalysisService:
    """Get the AnalysisService bound to the global numeric and resolve settings."""
    return AnalysisService(numeric=settings.numeric, resolve=settings.resolve)
