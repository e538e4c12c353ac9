"""Integration tests for the web analysis router."""

from httpx import AsyncClient

from app.services import corpus
from tests.conftest import web_document


class TestPublicPaths:
    """Service endpoints outside the analysis API."""

    async def test_health_check(self, async_client: AsyncClient) -> None:
        resp = await async_client.get("/health")
        assert resp.status_code == 200
        assert resp.json()["data"] == {"status": "healthy"}

    async def test_root(self, async_client: AsyncClient) -> None:
        resp = await async_client.get("/")
        assert resp.status_code == 200
        assert resp.json()["data"]["docs"] == "/docs"


class TestExamples:
    """Example listing and retrieval."""

    async def test_list(self, async_client: AsyncClient) -> None:
        resp = await async_client.get("/api/v1/examples")
        assert resp.status_code == 200
        names = [item["name"] for item in resp.json()["data"]]
        assert names == list(corpus.EXAMPLE_NAMES)

    async def test_get(self, async_client: AsyncClient) -> None:
        resp = await async_client.get("/api/v1/examples/theta")
        assert resp.status_code == 200
        data = resp.json()["data"]
        assert data["format"] == "web-v1"
        assert len(data["edges"]) == 3

    async def test_unknown(self, async_client: AsyncClient) -> None:
        resp = await async_client.get("/api/v1/examples/torus")
        assert resp.status_code == 404
        body = resp.json()
        assert body["status"] == 404
        assert body["code"] == "EXAMPLE_NOT_FOUND"


class TestAnalysis:
    """POST endpoints over web-v1 documents."""

    async def test_validate(self, async_client: AsyncClient) -> None:
        resp = await async_client.post(
            "/api/v1/webs/validate", json={"web": web_document(corpus.jumping_jack())}
        )
        assert resp.status_code == 200
        data = resp.json()["data"]
        assert data["valid"] is True
        assert data["boundary_signs"] == ["+", "+", "-", "-"]

    async def test_faces(self, async_client: AsyncClient) -> None:
        resp = await async_client.post(
            "/api/v1/webs/faces", json={"web": web_document(corpus.cube()), "euler": True}
        )
        assert resp.status_code == 200
        data = resp.json()["data"]
        assert len(data["faces"]) == 6
        assert data["euler_audit"] == "2"

    async def test_color(self, async_client: AsyncClient) -> None:
        resp = await async_client.post(
            "/api/v1/webs/color", json={"web": web_document(corpus.cube()), "count": True}
        )
        assert resp.status_code == 200
        data = resp.json()["data"]
        assert data["proper"] is True
        assert data["count"] == 24

    async def test_spider(self, async_client: AsyncClient) -> None:
        resp = await async_client.post(
            "/api/v1/webs/spider",
            json={"web": web_document(corpus.cube()), "geodesics": True},
        )
        assert resp.status_code == 200
        data = resp.json()["data"]
        assert data["polynomial"] == "2*q^-4 + 6*q^-2 + 8 + 6*q^2 + 2*q^4"
        assert len(data["geodesics"]) == 2
        assert data["tree"] is None

    async def test_spider_bounded_web(self, async_client: AsyncClient) -> None:
        resp = await async_client.post(
            "/api/v1/webs/spider", json={"web": web_document(corpus.square())}
        )
        assert resp.status_code == 422
        assert resp.json()["code"] == "BOUNDED_WEB"

    async def test_numeric(self, async_client: AsyncClient) -> None:
        resp = await async_client.post(
            "/api/v1/webs/numeric",
            json={"web": web_document(corpus.theta()), "seeds": [0, 1], "dimension": True},
        )
        assert resp.status_code == 200
        samples = resp.json()["data"]["samples"]
        assert [s["est_dim"] for s in samples] == [6, 6]
        assert all(s["residual"] < 1e-9 for s in samples)

    async def test_bad_policy(self, async_client: AsyncClient) -> None:
        resp = await async_client.post(
            "/api/v1/webs/spider",
            json={"web": web_document(corpus.theta()), "policy": "greedy"},
        )
        assert resp.status_code == 400
        assert resp.json()["code"] == "POLICY_FORMAT"


class TestMalformedRequests:
    """Request bodies that never reach the analysis code."""

    async def test_missing_format(self, async_client: AsyncClient) -> None:
        resp = await async_client.post("/api/v1/webs/validate", json={"web": {"edges": []}})
        assert resp.status_code == 422
        body = resp.json()
        assert body["code"] == "VALIDATION_ERROR"
        assert body["status"] == 422
        assert any(detail.startswith("body.web") for detail in body["details"])

    async def test_unknown_field(self, async_client: AsyncClient) -> None:
        document = web_document(corpus.theta())
        resp = await async_client.post(
            "/api/v1/webs/validate", json={"web": document, "extra": 1}
        )
        assert resp.status_code == 422

    async def test_invalid_web(self, async_client: AsyncClient) -> None:
        document = web_document(corpus.theta())
        document["vertices"][0]["rotation"] = ["0t", "1t"]
        resp = await async_client.post("/api/v1/webs/spider", json={"web": document})
        assert resp.status_code == 422
        body = resp.json()
        assert body["code"] == "INVALID_WEB"
        assert body["details"]
        assert all(": " in detail for detail in body["details"])

    async def test_census_limit(self, async_client: AsyncClient) -> None:
        resp = await async_client.post(
            "/api/v1/webs/numeric",
            json={"web": web_document(corpus.theta()), "census": 10_000},
        )
        assert resp.status_code == 422
