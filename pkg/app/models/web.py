"""Planar webs stored as rotation systems over half-edges."""

import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from enum import StrEnum
from functools import cached_property

from app.core.exceptions import WebFormatError

_TOKEN = re.compile(r"^(\d+)([th])$")


class End(StrEnum):
    TAIL = "t"
    HEAD = "h"

    @property
    def opposite(self) -> "End":
        return End.HEAD if self is End.TAIL else End.TAIL


class VertexKind(StrEnum):
    SOURCE = "source"
    SINK = "sink"

    @property
    def end(self) -> End:
        """End carried by every half-edge at a vertex of this kind."""
        return End.TAIL if self is VertexKind.SOURCE else End.HEAD

    @property
    def flipped(self) -> "VertexKind":
        return VertexKind.SINK if self is VertexKind.SOURCE else VertexKind.SOURCE


class Side(StrEnum):
    """Side of an edge relative to its tail-to-head direction."""

    LEFT = "left"
    RIGHT = "right"


class Sign(StrEnum):
    IN = "+"
    OUT = "-"


@dataclass(frozen=True, order=True)
class HalfEdgeRef:
    """One end of an edge; written ``<edgeId>t`` or ``<edgeId>h``."""

    edge_id: int
    end: End

    @classmethod
    def parse(cls, token: str) -> "HalfEdgeRef":
        match = _TOKEN.match(token)
        if match is None:
            raise WebFormatError(f"bad half-edge token {token!r}")
        return cls(int(match[1]), End(match[2]))

    @property
    def token(self) -> str:
        return f"{self.edge_id}{self.end.value}"

    @property
    def opposite(self) -> "HalfEdgeRef":
        return HalfEdgeRef(self.edge_id, self.end.opposite)

    @property
    def side(self) -> Side:
        """Edge side lying to the right when leaving the vertex along this half-edge."""
        return Side.RIGHT if self.end is End.TAIL else Side.LEFT

    def __str__(self) -> str:
        return self.token


def tail(edge_id: int) -> HalfEdgeRef:
    return HalfEdgeRef(edge_id, End.TAIL)


def head(edge_id: int) -> HalfEdgeRef:
    return HalfEdgeRef(edge_id, End.HEAD)


@dataclass(frozen=True)
class Vertex:
    id: int
    kind: VertexKind
    rotation: tuple[HalfEdgeRef, ...]

    def after(self, half: HalfEdgeRef) -> HalfEdgeRef:
        """Next half-edge counterclockwise from ``half``."""
        index = self.rotation.index(half)
        return self.rotation[(index + 1) % len(self.rotation)]


@dataclass(frozen=True)
class Edge:
    id: int
    tail: int | None
    head: int | None

    def endpoint(self, end: End) -> int | None:
        return self.tail if end is End.TAIL else self.head


@dataclass(frozen=True)
class Web:
    """Oriented trivalent web; vertices and edges are kept sorted by id."""

    vertices: tuple[Vertex, ...] = ()
    edges: tuple[Edge, ...] = ()
    free_loops: int = 0
    boundary: tuple[HalfEdgeRef, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices, key=lambda v: v.id)))
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=lambda e: e.id)))

    @classmethod
    def build(
        cls,
        vertices: Iterable[tuple[int, VertexKind | str, Iterable[str]]],
        edges: Iterable[tuple[int, int | None, int | None]],
        free_loops: int = 0,
        boundary: Iterable[str] = (),
    ) -> "Web":
        """Convenience constructor from plain tuples and half-edge tokens."""
        return cls(
            vertices=tuple(
                Vertex(vid, VertexKind(kind), tuple(HalfEdgeRef.parse(t) for t in rotation))
                for vid, kind, rotation in vertices
            ),
            edges=tuple(Edge(eid, t, h) for eid, t, h in edges),
            free_loops=free_loops,
            boundary=tuple(HalfEdgeRef.parse(t) for t in boundary),
        )

    @cached_property
    def vertex_map(self) -> Mapping[int, Vertex]:
        return {v.id: v for v in self.vertices}

    @cached_property
    def edge_map(self) -> Mapping[int, Edge]:
        return {e.id: e for e in self.edges}

    def vertex(self, vertex_id: int) -> Vertex:
        return self.vertex_map[vertex_id]

    def edge(self, edge_id: int) -> Edge:
        return self.edge_map[edge_id]

    def vertex_at(self, half: HalfEdgeRef) -> int | None:
        """Vertex holding ``half``, or None when it dangles."""
        return self.edge(half.edge_id).endpoint(half.end)

    @cached_property
    def dangling(self) -> tuple[HalfEdgeRef, ...]:
        """Half-edges with no vertex, in edge-id order."""
        return tuple(
            HalfEdgeRef(e.id, end)
            for e in self.edges
            for end in (End.TAIL, End.HEAD)
            if e.endpoint(end) is None
        )

    @property
    def is_closed(self) -> bool:
        return not self.dangling

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def is_empty(self) -> bool:
        return not self.vertices and not self.edges and self.free_loops == 0

    def next_edge_id(self) -> int:
        return max((e.id for e in self.edges), default=-1) + 1

    def next_vertex_id(self) -> int:
        return max((v.id for v in self.vertices), default=-1) + 1


@dataclass(frozen=True)
class Face:
    """A face as the cycle of darts bounding it, rotated to its canonical anchor.

    A dart is a half-edge read as "leave its vertex along this edge"; the face
    lies to the right of travel.
    """

    darts: tuple[HalfEdgeRef, ...]

    @property
    def boundary(self) -> tuple[tuple[int, Side], ...]:
        return tuple((d.edge_id, d.side) for d in self.darts)

    @property
    def size(self) -> int:
        return len(self.darts)

    @property
    def anchor(self) -> tuple[int, Side]:
        return self.boundary[0]

    @property
    def anchor_token(self) -> str:
        edge_id, side = self.anchor
        return f"{edge_id}:{side.value}"

    @property
    def sort_key(self) -> tuple[int, tuple[int, Side]]:
        return (self.size, self.anchor)

    @classmethod
    def canonical(cls, cycle: Iterable[HalfEdgeRef]) -> "Face":
        darts = tuple(cycle)
        start = min(range(len(darts)), key=lambda i: (darts[i].edge_id, darts[i].side))
        return cls(darts[start:] + darts[:start])


@dataclass(frozen=True)
class Coloring:
    """Edge colors in Z/3 together with the face labels that produced them."""

    colors: Mapping[int, int] = field(hash=False)
    face_labels: Mapping[tuple[int, Side], int] = field(default_factory=dict, hash=False)

    def shifted(self, constant: int) -> "Coloring":
        return Coloring(
            {e: (c + constant) % 3 for e, c in self.colors.items()},
            {k: (v + constant) % 3 for k, v in self.face_labels.items()},
        )

    def offsets(self, other: "Coloring") -> set[int]:
        """Set of differences ``self - other`` over shared edges."""
        return {(c - other.colors[e]) % 3 for e, c in self.colors.items() if e in other.colors}


@dataclass(frozen=True)
class Violation:
    code: str
    element: str
    element_id: int | None
    message: str
