"""Tests for web-v1 parsing and serialization."""

import json

import pytest

from app.core.exceptions import WebFormatError
from app.models.web import End, HalfEdgeRef, VertexKind
from app.schemas.web_schema import WebPayload, parse_web, serialize_web
from app.services import corpus


class TestHalfEdgeTokens:
    """Half-edge token parsing."""

    def test_parse(self) -> None:
        assert HalfEdgeRef.parse("12h") == HalfEdgeRef(12, End.HEAD)
        assert HalfEdgeRef.parse("0t").token == "0t"

    @pytest.mark.parametrize("token", ["h", "3x", "-1t", "3 t"])
    def test_rejects_bad_tokens(self, token: str) -> None:
        with pytest.raises(WebFormatError):
            HalfEdgeRef.parse(token)


class TestParseWeb:
    """parse_web behaviour on valid and malformed documents."""

    def test_parses_theta(self) -> None:
        text = json.dumps(
            {
                "format": "web-v1",
                "vertices": [
                    {"id": 0, "kind": "source", "rotation": ["0t", "1t", "2t"]},
                    {"id": 1, "kind": "sink", "rotation": ["2h", "1h", "0h"]},
                ],
                "edges": [
                    {"id": 0, "tail": 0, "head": 1},
                    {"id": 1, "tail": 0, "head": 1},
                    {"id": 2, "tail": 0, "head": 1},
                ],
            }
        )
        web = parse_web(text)
        assert web == corpus.theta()
        assert web.vertex(0).kind is VertexKind.SOURCE

    def test_free_loops_default_to_zero(self) -> None:
        assert parse_web('{"format": "web-v1"}').free_loops == 0

    def test_rejects_unknown_fields(self) -> None:
        with pytest.raises(WebFormatError):
            parse_web('{"format": "web-v1", "faces": []}')

    def test_rejects_wrong_format_tag(self) -> None:
        with pytest.raises(WebFormatError):
            parse_web('{"format": "web-v2"}')

    def test_rejects_duplicate_ids(self) -> None:
        text = json.dumps(
            {
                "format": "web-v1",
                "edges": [
                    {"id": 0, "tail": None, "head": None},
                    {"id": 0, "tail": None, "head": None},
                ],
            }
        )
        with pytest.raises(WebFormatError, match="duplicate edge"):
            parse_web(text)

    def test_rejects_bad_rotation_token(self) -> None:
        text = json.dumps(
            {
                "format": "web-v1",
                "vertices": [{"id": 0, "kind": "source", "rotation": ["0q"]}],
            }
        )
        with pytest.raises(WebFormatError):
            parse_web(text)

    def test_rejects_invalid_json(self) -> None:
        with pytest.raises(WebFormatError):
            parse_web("{not json")


class TestSerializeWeb:
    """Deterministic serialization."""

    def test_boundary_omitted_when_closed(self) -> None:
        data = json.loads(serialize_web(corpus.cube()))
        assert "boundary" not in data
        assert data["format"] == "web-v1"

    def test_boundary_kept_when_bounded(self) -> None:
        data = json.loads(serialize_web(corpus.square()))
        assert data["boundary"] == ["4h", "5t", "6h", "7t"]

    @pytest.mark.parametrize("name", corpus.EXAMPLE_NAMES)
    def test_serialization_is_stable(self, name: str) -> None:
        text = serialize_web(corpus.example(name))
        assert serialize_web(parse_web(text)) == text

    def test_payload_round_trip_preserves_web(self) -> None:
        web = corpus.double_square()
        assert WebPayload.from_web(web).to_web() == web
