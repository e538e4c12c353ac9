"""web-v1 JSON documents."""

import json
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from app.core.exceptions import WebFormatError
from app.models.web import Edge, HalfEdgeRef, Vertex, VertexKind, Web


class VertexPayload(BaseModel):
    """One trivalent vertex with its counterclockwise rotation."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    id: int = Field(ge=0)
    kind: Literal["source", "sink"]
    rotation: list[str] = Field(description="Half-edge tokens, counterclockwise")

    @model_validator(mode="after")
    def check_tokens(self) -> "VertexPayload":
        for token in self.rotation:
            HalfEdgeRef.parse(token)
        return self


class EdgePayload(BaseModel):
    """Oriented edge; a null endpoint dangles on the boundary."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    id: int = Field(ge=0)
    tail: int | None
    head: int | None


class WebPayload(BaseModel):
    """Top-level web-v1 document."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    format: Literal["web-v1"]
    free_loops: int = Field(default=0, ge=0)
    vertices: list[VertexPayload] = Field(default_factory=list)
    edges: list[EdgePayload] = Field(default_factory=list)
    boundary: list[str] | None = Field(
        default=None, description="Cyclic order of dangling half-edges"
    )

    @model_validator(mode="after")
    def check_unique_ids(self) -> "WebPayload":
        for label, ids in (
            ("vertex", [v.id for v in self.vertices]),
            ("edge", [e.id for e in self.edges]),
        ):
            duplicates = sorted({i for i in ids if ids.count(i) > 1})
            if duplicates:
                raise ValueError(f"duplicate {label} ids {duplicates}")
        for token in self.boundary or []:
            HalfEdgeRef.parse(token)
        return self

    def to_web(self) -> Web:
        return Web(
            vertices=tuple(
                Vertex(
                    v.id,
                    VertexKind(v.kind),
                    tuple(HalfEdgeRef.parse(t) for t in v.rotation),
                )
                for v in self.vertices
            ),
            edges=tuple(Edge(e.id, e.tail, e.head) for e in self.edges),
            free_loops=self.free_loops,
            boundary=tuple(HalfEdgeRef.parse(t) for t in self.boundary or []),
        )

    @classmethod
    def from_web(cls, web: Web) -> "WebPayload":
        return cls(
            format="web-v1",
            free_loops=web.free_loops,
            vertices=[
                VertexPayload(
                    id=v.id,
                    kind=v.kind.value,
                    rotation=[h.token for h in v.rotation],
                )
                for v in web.vertices
            ],
            edges=[EdgePayload(id=e.id, tail=e.tail, head=e.head) for e in web.edges],
            boundary=[h.token for h in web.boundary] if web.boundary else None,
        )


def parse_web(text: str) -> Web:
    """Parse a web-v1 document, rejecting unknown fields and duplicate ids."""
    try:
        return WebPayload.model_validate_json(text).to_web()
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(p) for p in first["loc"]) or "document"
        raise WebFormatError(f"{where}: {first['msg']}") from exc


def serialize_web(web: Web) -> str:
    """Deterministic web-v1 text; ``boundary`` is omitted when empty."""
    data = WebPayload.from_web(web).model_dump(mode="json")
    if data["boundary"] is None:
        del data["boundary"]
    return json.dumps(data, indent=2) + "\n"
