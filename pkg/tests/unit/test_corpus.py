"""Tests for the built-in webs and the random generator."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.core.exceptions import ExampleNotFoundError
from app.services import corpus
from app.services.topology import validate


class TestExamples:
    """Named example webs."""

    def test_names(self) -> None:
        assert corpus.EXAMPLE_NAMES[:4] == ("circle", "two-circles", "strand", "theta")
        assert len(corpus.EXAMPLE_NAMES) == 15

    def test_unknown_name(self) -> None:
        with pytest.raises(ExampleNotFoundError) as exc_info:
            corpus.example("torus")
        assert exc_info.value.status_code == 404

    def test_closed_examples(self) -> None:
        closed = corpus.closed_examples()
        assert {"cube", "theta", "circle", "double-hexagon"} <= set(closed)
        assert "square" not in closed and "strand" not in closed

    @pytest.mark.parametrize(
        ("name", "vertices", "edges"),
        [
            ("theta", 2, 3),
            ("bubble", 2, 4),
            ("jumping-jack", 2, 5),
            ("square", 4, 8),
            ("double-square", 6, 11),
            ("cube", 8, 12),
            ("double-hexagon", 12, 18),
        ],
    )
    def test_sizes(self, name: str, vertices: int, edges: int) -> None:
        web = corpus.example(name)
        assert (web.vertex_count, len(web.edges)) == (vertices, edges)

    def test_examples_are_fresh(self) -> None:
        assert corpus.example("cube") == corpus.example("cube")
        assert corpus.example("cube") is not corpus.example("cube")


class TestRandomWeb:
    """Generator built from inverse skein moves."""

    @given(seed=st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=50, deadline=None)
    def test_generated_webs_are_valid(self, seed: int) -> None:
        web = corpus.random_web(random.Random(seed))
        assert validate(web) == []
        assert web.is_closed
        assert web.vertex_count <= 14
        assert web.vertex_count % 2 == 0

    @pytest.mark.parametrize("limit", [2, 4, 8])
    def test_respects_vertex_limit(self, limit: int) -> None:
        rng = random.Random(3)
        for _ in range(10):
            assert corpus.random_web(rng, max_vertices=limit).vertex_count <= limit

    def test_deterministic_per_seed(self) -> None:
        assert corpus.random_web(random.Random(11)) == corpus.random_web(random.Random(11))

    def test_grows_vertices(self) -> None:
        rng = random.Random(0)
        assert any(corpus.random_web(rng).vertex_count > 0 for _ in range(10))
