"""Pytest configuration and fixtures."""

from collections.abc import AsyncGenerator

import pytest
from httpx import ASGITransport, AsyncClient

from app.core.settings import NumericConfig, ResolveConfig
from app.models.web import Web
from app.services import corpus

# --- Corpus webs ---


@pytest.fixture
def theta() -> Web:
    return corpus.theta()


@pytest.fixture
def cube() -> Web:
    return corpus.cube()


@pytest.fixture
def square_web() -> Web:
    return corpus.square()


@pytest.fixture
def double_square() -> Web:
    return corpus.double_square()


@pytest.fixture
def bubble_web() -> Web:
    return corpus.bubble()


# --- Configs ---


@pytest.fixture
def numeric_config() -> NumericConfig:
    """Defaults with a smaller restart budget so failures surface quickly."""
    return NumericConfig(restart_budget=200)


@pytest.fixture
def resolve_config() -> ResolveConfig:
    return ResolveConfig()


# --- App client ---


@pytest.fixture
async def async_client() -> AsyncGenerator[AsyncClient, None]:
    """Create an async test client for async tests."""
    from app.main import app

    transport = ASGITransport(app=app)
    async with AsyncClient(transport=transport, base_url="http://test") as ac:
        yield ac


def web_document(web: Web) -> dict:
    """web-v1 payload for request bodies."""
    from app.schemas.web_schema import WebPayload

    return WebPayload.from_web(web).model_dump(mode="json")
