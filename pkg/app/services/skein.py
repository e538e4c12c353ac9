"""Skein moves as pure surgery on webs.

Every move deletes a few vertices and sides, then rejoins the loose ends with
``splice``. The returned :class:`Surgery` keeps the forgetful map: which edge
of the result (or which new free loop) each surviving edge of the input became.
"""

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from app.core.exceptions import (
    NoFreeLoopError,
    NotABubbleError,
    NotASquareError,
    NotDanglingError,
)
from app.models.resolution import Parity
from app.models.web import Edge, End, Face, HalfEdgeRef, Vertex, VertexKind, Web
from app.services.topology import component_count, corners, external_half_edges


@dataclass(frozen=True)
class Surgery:
    web: Web
    edge_map: Mapping[int, int] = field(default_factory=dict)
    loop_map: Mapping[int, int] = field(default_factory=dict)


class _Workspace:
    """Mutable copy of a web used while a single move is applied."""

    def __init__(self, web: Web) -> None:
        self._vertices: dict[int, Vertex] = dict(web.vertex_map)
        self._edges: dict[int, Edge] = dict(web.edge_map)
        self._boundary: list[HalfEdgeRef] = list(web.boundary)
        self._free_loops = web.free_loops
        self._edge_map: dict[int, int] = {e.id: e.id for e in web.edges}
        self._loop_map: dict[int, int] = {}

    def delete_vertex(self, vertex_id: int) -> None:
        vertex = self._vertices.pop(vertex_id)
        for half in vertex.rotation:
            edge = self._edges[half.edge_id]
            if half.end is End.TAIL:
                self._edges[edge.id] = Edge(edge.id, None, edge.head)
            else:
                self._edges[edge.id] = Edge(edge.id, edge.tail, None)

    def delete_edge(self, edge_id: int) -> None:
        del self._edges[edge_id]
        self._edge_map = {k: v for k, v in self._edge_map.items() if v != edge_id}

    def current(self, parent_edge: int) -> int:
        return self._edge_map[parent_edge]

    def _rename(self, old: HalfEdgeRef, new: HalfEdgeRef, vertex_id: int | None) -> None:
        if vertex_id is not None:
            vertex = self._vertices[vertex_id]
            rotation = tuple(new if h == old else h for h in vertex.rotation)
            self._vertices[vertex_id] = Vertex(vertex.id, vertex.kind, rotation)
        else:
            self._boundary = [new if h == old else h for h in self._boundary]

    def splice(self, incoming: int, outgoing: int, absorbed: Iterable[int] = ()) -> None:
        """Join the loose head of ``incoming`` to the loose tail of ``outgoing``.

        Arguments are current edge ids. The merged edge takes the smallest id
        among the two and ``absorbed``; splicing an edge to itself makes a loop.
        """
        first = self._edges[incoming]
        second = self._edges[outgoing]
        if first.head is not None:
            raise NotDanglingError(f"{incoming}h")
        if second.tail is not None:
            raise NotDanglingError(f"{outgoing}t")
        loose = (HalfEdgeRef(incoming, End.HEAD), HalfEdgeRef(outgoing, End.TAIL))
        self._boundary = [h for h in self._boundary if h not in loose]
        if incoming == outgoing:
            del self._edges[incoming]
            index = self._free_loops
            self._free_loops += 1
            for parent, child in list(self._edge_map.items()):
                if child == incoming:
                    del self._edge_map[parent]
                    self._loop_map[parent] = index
            return
        merged = min(incoming, outgoing, *absorbed)
        del self._edges[incoming]
        del self._edges[outgoing]
        self._edges[merged] = Edge(merged, first.tail, second.head)
        self._rename(
            HalfEdgeRef(incoming, End.TAIL), HalfEdgeRef(merged, End.TAIL), first.tail
        )
        self._rename(
            HalfEdgeRef(outgoing, End.HEAD), HalfEdgeRef(merged, End.HEAD), second.head
        )
        for parent, child in self._edge_map.items():
            if child in (incoming, outgoing):
                self._edge_map[parent] = merged

    def finish(self) -> Surgery:
        web = Web(
            vertices=tuple(self._vertices.values()),
            edges=tuple(self._edges.values()),
            free_loops=self._free_loops,
            boundary=tuple(self._boundary),
        )
        return Surgery(web, dict(self._edge_map), dict(self._loop_map))


def arc_ends(web: Web, face: Face, i: int, j: int) -> tuple[int, int]:
    """External edges at corners ``i`` and ``j``: (the one entering the sink, the one leaving the source)."""
    ids = corners(web, face)
    externals = external_half_edges(web, face)
    if web.vertex(ids[i]).kind is VertexKind.SINK:
        return externals[i].edge_id, externals[j].edge_id
    return externals[j].edge_id, externals[i].edge_id


def _clear_face(web: Web, face: Face) -> _Workspace:
    workspace = _Workspace(web)
    for vertex_id in corners(web, face):
        workspace.delete_vertex(vertex_id)
    for side in {d.edge_id for d in face.darts}:
        workspace.delete_edge(side)
    return workspace


# --- Moves ---


def remove_circle(web: Web) -> Web:
    """Drop one free loop; the caller accounts for the factor [3]."""
    if web.free_loops < 1:
        raise NoFreeLoopError()
    return Web(web.vertices, web.edges, web.free_loops - 1, web.boundary)


def bubble_surgery(web: Web, bubble: Face) -> Surgery:
    if bubble.size != 2:
        raise NotABubbleError(bubble.size)
    workspace = _clear_face(web, bubble)
    incoming, outgoing = arc_ends(web, bubble, 0, 1)
    workspace.splice(workspace.current(incoming), workspace.current(outgoing))
    return workspace.finish()


def smash_bubble(web: Web, bubble: Face) -> Web:
    """Replace a bubble and its two external edges by one edge (or a loop)."""
    return bubble_surgery(web, bubble).web


def square_surgery(web: Web, square: Face, keep: Parity) -> Surgery:
    if square.size != 4:
        raise NotASquareError(square.size)
    p = keep.offset
    sides = [d.edge_id for d in square.darts]
    workspace = _clear_face(web, square)
    for i, j in ((p, p + 1), (p + 2, (p + 3) % 4)):
        incoming, outgoing = arc_ends(web, square, i, j)
        workspace.splice(
            workspace.current(incoming),
            workspace.current(outgoing),
            absorbed=(sides[i],),
        )
    return workspace.finish()


def smooth_square(web: Web, square: Face, keep: Parity) -> Web:
    """Resolve a square, keeping sides ``keep.offset`` and ``keep.offset + 2`` of its cycle."""
    return square_surgery(web, square, keep).web


def splice(web: Web, incoming: int, outgoing: int) -> Web:
    """Join two boundary stubs of a bounded web into one edge."""
    workspace = _Workspace(web)
    workspace.splice(incoming, outgoing)
    return workspace.finish().web


def boundary_glue_surgery(web: Web, pairs: Iterable[tuple[int, int]]) -> Surgery:
    workspace = _Workspace(web)
    for incoming, outgoing in pairs:
        workspace.splice(workspace.current(incoming), workspace.current(outgoing))
    return workspace.finish()


def glue_boundary_pairs(web: Web, pairs: Iterable[tuple[int, int]]) -> Web:
    """Close a bounded web by splicing each (incoming, outgoing) stub pair in turn."""
    return boundary_glue_surgery(web, pairs).web


def is_separating_square(web: Web, square: Face) -> bool:
    """True when some smoothing of ``square`` splits off a new component."""
    before = component_count(web)
    return any(
        component_count(smooth_square(web, square, keep)) > before for keep in Parity
    )
