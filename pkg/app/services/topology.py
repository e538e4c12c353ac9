"""Validation, face traversal and component structure of webs."""

from collections import Counter
from fractions import Fraction

import networkx as nx
import structlog

from app.core.exceptions import (
    BoundaryShapeError,
    BoundedWebError,
    DisconnectedWebError,
    FaceNotFoundError,
)
from app.models.web import (
    Edge,
    End,
    Face,
    HalfEdgeRef,
    Sign,
    Vertex,
    Violation,
    Web,
)

logger = structlog.get_logger()


# --- Face traversal ---


def _next_dart(web: Web, dart: HalfEdgeRef) -> HalfEdgeRef | None:
    """Walk along ``dart`` and turn to the next half-edge counterclockwise."""
    arrival = dart.opposite
    vertex_id = web.vertex_at(arrival)
    if vertex_id is None:
        return None
    return web.vertex(vertex_id).after(arrival)


def _closed_orbits(web: Web) -> list[Face]:
    """Cycles of the dart permutation; walks that reach the boundary are dropped."""
    visited: set[HalfEdgeRef] = set()
    closed: list[Face] = []
    for vertex in web.vertices:
        for start in vertex.rotation:
            if start in visited:
                continue
            path = [start]
            visited.add(start)
            current: HalfEdgeRef | None = _next_dart(web, start)
            while current is not None and current not in visited:
                path.append(current)
                visited.add(current)
                current = _next_dart(web, current)
            if current == start:
                closed.append(Face.canonical(path))
    closed.sort(key=lambda f: f.sort_key)
    return closed


def faces(web: Web) -> list[Face]:
    """All faces of a closed web, ordered by (size, anchor)."""
    if not web.is_closed:
        raise BoundedWebError("Face traversal")
    return _closed_orbits(web)


def interior_faces(web: Web) -> list[Face]:
    """Faces that never touch a dangling half-edge; all faces when the web is closed."""
    return _closed_orbits(web)


def face_by_anchor(web: Web, anchor: str) -> Face:
    for face in interior_faces(web):
        if face.anchor_token == anchor:
            return face
    raise FaceNotFoundError(anchor)


def corner(web: Web, dart: HalfEdgeRef) -> Vertex:
    """Vertex a dart leaves from."""
    vertex_id = web.vertex_at(dart)
    if vertex_id is None:
        raise BoundedWebError(f"Dart {dart} dangles; face corner lookup")
    return web.vertex(vertex_id)


def corners(web: Web, face: Face) -> list[int]:
    """Vertex at the start of each dart of ``face``."""
    return [corner(web, d).id for d in face.darts]


def external_half_edges(web: Web, face: Face) -> list[HalfEdgeRef]:
    """At each corner, the rotation entry that is not a side of ``face``."""
    result: list[HalfEdgeRef] = []
    darts = face.darts
    for i, dart in enumerate(darts):
        incoming = darts[i - 1].opposite
        (external,) = (h for h in corner(web, dart).rotation if h not in (dart, incoming))
        result.append(external)
    return result


# --- Components ---


def _component_graph(web: Web) -> nx.Graph:
    graph = nx.Graph()
    for vertex in web.vertices:
        graph.add_node(("v", vertex.id))
    for edge in web.edges:
        graph.add_node(("e", edge.id))
        for endpoint in (edge.tail, edge.head):
            if endpoint is not None:
                graph.add_edge(("e", edge.id), ("v", endpoint))
    return graph


def components(web: Web) -> list[Web]:
    """Connected pieces, free loops included as single-loop webs."""
    pieces: list[Web] = []
    for nodes in nx.connected_components(_component_graph(web)):
        vertex_ids = {i for kind, i in nodes if kind == "v"}
        edge_ids = {i for kind, i in nodes if kind == "e"}
        pieces.append(
            Web(
                vertices=tuple(v for v in web.vertices if v.id in vertex_ids),
                edges=tuple(e for e in web.edges if e.id in edge_ids),
                boundary=tuple(h for h in web.boundary if h.edge_id in edge_ids),
            )
        )
    pieces.sort(key=lambda w: min(e.id for e in w.edges))
    pieces.extend(Web(free_loops=1) for _ in range(web.free_loops))
    return pieces


def component_count(web: Web) -> int:
    return nx.number_connected_components(_component_graph(web)) + web.free_loops


def is_connected(web: Web) -> bool:
    """Single piece carrying at least one vertex."""
    return bool(web.vertices) and component_count(web) == 1


def disjoint_union(a: Web, b: Web) -> Web:
    """Place ``b`` beside ``a`` with its ids shifted past those of ``a``."""
    dv = a.next_vertex_id()
    de = a.next_edge_id()

    def shift(h: HalfEdgeRef) -> HalfEdgeRef:
        return HalfEdgeRef(h.edge_id + de, h.end)

    return Web(
        vertices=a.vertices
        + tuple(Vertex(v.id + dv, v.kind, tuple(map(shift, v.rotation))) for v in b.vertices),
        edges=a.edges
        + tuple(
            Edge(
                e.id + de,
                None if e.tail is None else e.tail + dv,
                None if e.head is None else e.head + dv,
            )
            for e in b.edges
        ),
        free_loops=a.free_loops + b.free_loops,
        boundary=a.boundary + tuple(map(shift, b.boundary)),
    )


def reverse_orientation(web: Web) -> Web:
    """Reverse every edge; sources become sinks, the embedding is unchanged."""
    return Web(
        vertices=tuple(
            Vertex(v.id, v.kind.flipped, tuple(h.opposite for h in v.rotation))
            for v in web.vertices
        ),
        edges=tuple(Edge(e.id, e.head, e.tail) for e in web.edges),
        free_loops=web.free_loops,
        boundary=tuple(h.opposite for h in web.boundary),
    )


def mirror(web: Web) -> Web:
    """Reflect the embedding: reverse every rotation and the boundary order."""
    return Web(
        vertices=tuple(Vertex(v.id, v.kind, v.rotation[::-1]) for v in web.vertices),
        edges=web.edges,
        free_loops=web.free_loops,
        boundary=web.boundary[::-1],
    )


# --- Boundary ---


def boundary_signs(web: Web) -> tuple[Sign, ...]:
    """Cyclic sign word: + where a head dangles (edge points in), - where a tail does."""
    if not web.boundary:
        raise BoundaryShapeError("a boundary circle", "none")
    return tuple(Sign.IN if h.end is End.HEAD else Sign.OUT for h in web.boundary)


# --- Validation ---


def _vertex_violations(web: Web) -> list[Violation]:
    found: list[Violation] = []
    holder: dict[HalfEdgeRef, int] = {}
    for vertex in web.vertices:
        if len(vertex.rotation) != 3:
            found.append(
                Violation(
                    "ROTATION_ARITY",
                    "vertex",
                    vertex.id,
                    f"rotation has {len(vertex.rotation)} entries, expected 3",
                )
            )
        for half, count in Counter(vertex.rotation).items():
            if count > 1:
                found.append(
                    Violation("DUPLICATE_HALF_EDGE", "vertex", vertex.id, f"{half} repeats")
                )
        for half in vertex.rotation:
            if half.end is not vertex.kind.end:
                found.append(
                    Violation(
                        "ORIENTATION",
                        "vertex",
                        vertex.id,
                        f"{vertex.kind.value} vertex holds {half}",
                    )
                )
            other = holder.setdefault(half, vertex.id)
            if other != vertex.id:
                found.append(
                    Violation(
                        "DUPLICATE_HALF_EDGE",
                        "vertex",
                        vertex.id,
                        f"{half} already sits at vertex {other}",
                    )
                )
            edge = web.edge_map.get(half.edge_id)
            if edge is None:
                found.append(
                    Violation("UNKNOWN_EDGE", "vertex", vertex.id, f"{half} names no edge")
                )
            elif edge.endpoint(half.end) != vertex.id:
                found.append(
                    Violation(
                        "INCIDENCE_MISMATCH",
                        "vertex",
                        vertex.id,
                        f"edge {edge.id} does not end here at {half.end.name.lower()}",
                    )
                )
    return found


def _edge_violations(web: Web) -> list[Violation]:
    found: list[Violation] = []
    on_boundary = set(web.boundary)
    for edge in web.edges:
        for end, kind in ((End.TAIL, "source"), (End.HEAD, "sink")):
            vertex_id = edge.endpoint(end)
            if vertex_id is None:
                continue
            vertex = web.vertex_map.get(vertex_id)
            half = HalfEdgeRef(edge.id, end)
            if vertex is None:
                found.append(
                    Violation("UNKNOWN_VERTEX", "edge", edge.id, f"vertex {vertex_id} missing")
                )
            elif half not in vertex.rotation:
                found.append(
                    Violation(
                        "MISSING_INCIDENCE",
                        "edge",
                        edge.id,
                        f"{half} absent from rotation of vertex {vertex_id}",
                    )
                )
            elif vertex.kind.value != kind:
                found.append(
                    Violation(
                        "ORIENTATION",
                        "edge",
                        edge.id,
                        f"{end.name.lower()} vertex {vertex_id} is not a {kind}",
                    )
                )
        if edge.tail is None and edge.head is None:
            ends = {HalfEdgeRef(edge.id, End.TAIL), HalfEdgeRef(edge.id, End.HEAD)}
            if not ends <= on_boundary:
                found.append(
                    Violation("EMPTY_EDGE", "edge", edge.id, "edge has no endpoints")
                )
    return found


def _boundary_violations(web: Web) -> list[Violation]:
    found: list[Violation] = []
    dangling = set(web.dangling)
    for half, count in Counter(web.boundary).items():
        if half not in dangling:
            found.append(
                Violation("BOUNDARY_MISMATCH", "edge", half.edge_id, f"{half} is not dangling")
            )
        if count > 1:
            found.append(
                Violation("BOUNDARY_MISMATCH", "edge", half.edge_id, f"{half} listed twice")
            )
    for half in sorted(dangling - set(web.boundary)):
        found.append(
            Violation("BOUNDARY_MISMATCH", "edge", half.edge_id, f"{half} missing from boundary")
        )
    return found


def euler_characteristic(web: Web) -> int:
    """V - E + F for a closed web whose loops are ignored."""
    return len(web.vertices) - len(web.edges) + len(faces(web))


def validate(web: Web) -> list[Violation]:
    """Every broken invariant, empty when the web is valid."""
    found: list[Violation] = []
    if web.free_loops < 0:
        found.append(Violation("NEGATIVE_LOOPS", "web", None, "free_loops is negative"))
    found += _vertex_violations(web)
    found += _edge_violations(web)
    found += _boundary_violations(web)
    if found:
        return found
    for piece in components(web):
        if piece.vertices and piece.is_closed:
            chi = euler_characteristic(piece)
            if chi != 2:
                anchor = min(v.id for v in piece.vertices)
                found.append(
                    Violation(
                        "EULER",
                        "vertex",
                        anchor,
                        f"component has V - E + F = {chi}, not a sphere",
                    )
                )
    return found


# --- Audits ---


def euler_audit(web: Web) -> Fraction:
    """Sum of (6 - size)/6 over all faces."""
    if not web.is_closed:
        raise BoundedWebError("Euler audit")
    if web.free_loops or not is_connected(web):
        raise DisconnectedWebError("Euler audit")
    return sum((Fraction(6 - f.size, 6) for f in faces(web)), Fraction(0))


def find_reducible_face(web: Web) -> Face | None:
    """Smallest bubble, else smallest square; None when nothing qualifies."""
    all_faces = faces(web)
    for size in (2, 4):
        for face in all_faces:
            if face.size == size:
                return face
    if web.vertices:
        logger.warning("No reducible face", vertices=web.vertex_count)
    return None
