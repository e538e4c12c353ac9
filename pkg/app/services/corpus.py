"""Built-in example webs and a random closed-web generator."""

import math
import random
from collections.abc import Callable, Mapping

import structlog

from app.core.exceptions import BoundedWebError, ExampleNotFoundError
from app.models.web import Edge, End, HalfEdgeRef, Vertex, VertexKind, Web, head, tail
from app.services.skein import glue_boundary_pairs, splice
from app.services.topology import faces

logger = structlog.get_logger()

SOURCE = VertexKind.SOURCE
SINK = VertexKind.SINK


def _drawn_web(
    positions: Mapping[int, tuple[float, float]],
    sources: set[int],
    edges: list[tuple[int, int, int]],
) -> Web:
    """Closed web from a straight-line drawing; rotations follow the angles."""
    incident: dict[int, list[tuple[float, HalfEdgeRef]]] = {v: [] for v in positions}
    for edge_id, t, h in edges:
        for here, there, end in ((t, h, End.TAIL), (h, t, End.HEAD)):
            (x0, y0), (x1, y1) = positions[here], positions[there]
            angle = math.atan2(y1 - y0, x1 - x0)
            incident[here].append((angle, HalfEdgeRef(edge_id, end)))
    vertices = tuple(
        Vertex(v, SOURCE if v in sources else SINK, tuple(h for _, h in sorted(around)))
        for v, around in incident.items()
    )
    return Web(vertices=vertices, edges=tuple(Edge(e, t, h) for e, t, h in edges))


def circle() -> Web:
    return Web(free_loops=1)


def two_circles() -> Web:
    return Web(free_loops=2)


def strand() -> Web:
    """A single edge crossing the disk, signs (+, -)."""
    return Web.build([], [(0, None, None)], boundary=["0h", "0t"])


def theta() -> Web:
    return Web.build(
        [(0, SOURCE, ["0t", "1t", "2t"]), (1, SINK, ["2h", "1h", "0h"])],
        [(0, 0, 1), (1, 0, 1), (2, 0, 1)],
    )


def bubble() -> Web:
    """Bubble on a strand: edge 0 enters, edge 3 leaves; signs (+, -)."""
    return Web.build(
        [(0, SINK, ["1h", "0h", "2h"]), (1, SOURCE, ["3t", "1t", "2t"])],
        [(0, None, 0), (1, 1, 0), (2, 1, 0), (3, 1, None)],
        boundary=["3h", "0t"],
    )


def bubble_closed() -> Web:
    return splice(bubble(), incoming=3, outgoing=0)


def triad() -> Web:
    return Web.build(
        [(0, SOURCE, ["0t", "1t", "2t"])],
        [(0, 0, None), (1, 0, None), (2, 0, None)],
        boundary=["0h", "1h", "2h"],
    )


def jumping_jack() -> Web:
    """Source and sink joined by one edge, each with two legs; signs (+, +, -, -)."""
    return Web.build(
        [(0, SOURCE, ["0t", "1t", "2t"]), (1, SINK, ["3h", "0h", "4h"])],
        [(0, 0, 1), (1, 0, None), (2, 0, None), (3, None, 1), (4, None, 1)],
        boundary=["1h", "2h", "4t", "3t"],
    )


def square() -> Web:
    """Square face with one leg per corner; signs (+, -, +, -)."""
    return Web.build(
        [
            (0, SOURCE, ["0t", "3t", "4t"]),
            (1, SINK, ["1h", "0h", "5h"]),
            (2, SOURCE, ["6t", "2t", "1t"]),
            (3, SINK, ["2h", "7h", "3h"]),
        ],
        [
            (0, 0, 1),
            (1, 2, 1),
            (2, 2, 3),
            (3, 0, 3),
            (4, 0, None),
            (5, None, 1),
            (6, 2, None),
            (7, None, 3),
        ],
        boundary=["4h", "5t", "6h", "7t"],
    )


def square_capped() -> Web:
    """Square with two neighbouring legs joined; signs (+, -)."""
    return splice(square(), incoming=6, outgoing=7)


def square_closed() -> Web:
    return glue_boundary_pairs(square(), [(4, 5), (6, 7)])


def double_square() -> Web:
    """Two squares sharing edge 5, legs at the four outer corners."""
    return Web.build(
        [
            (0, SOURCE, ["0t", "7t", "4t"]),
            (1, SINK, ["1h", "0h", "5h"]),
            (2, SOURCE, ["10t", "1t", "6t"]),
            (3, SINK, ["2h", "4h", "8h"]),
            (4, SOURCE, ["3t", "5t", "2t"]),
            (5, SINK, ["6h", "3h", "9h"]),
        ],
        [
            (0, 0, 1),
            (1, 2, 1),
            (2, 4, 3),
            (3, 4, 5),
            (4, 0, 3),
            (5, 4, 1),
            (6, 2, 5),
            (7, 0, None),
            (8, None, 3),
            (9, None, 5),
            (10, 2, None),
        ],
        boundary=["10h", "7h", "8t", "9t"],
    )


def double_square_closed() -> Web:
    return glue_boundary_pairs(double_square(), [(7, 8), (10, 9)])


def cube() -> Web:
    """Outer square 0-3, inner square 4-7, spokes 8-11."""
    return Web.build(
        [
            (0, SOURCE, ["0t", "8t", "3t"]),
            (1, SINK, ["1h", "9h", "0h"]),
            (2, SOURCE, ["2t", "10t", "1t"]),
            (3, SINK, ["2h", "3h", "11h"]),
            (4, SINK, ["4h", "7h", "8h"]),
            (5, SOURCE, ["5t", "4t", "9t"]),
            (6, SINK, ["10h", "6h", "5h"]),
            (7, SOURCE, ["6t", "11t", "7t"]),
        ],
        [
            (0, 0, 1),
            (1, 2, 1),
            (2, 2, 3),
            (3, 0, 3),
            (4, 5, 4),
            (5, 5, 6),
            (6, 7, 6),
            (7, 7, 4),
            (8, 0, 4),
            (9, 5, 1),
            (10, 2, 6),
            (11, 7, 3),
        ],
    )


def double_hexagon() -> Web:
    """Two hexagons joined by six spokes (the hexagonal prism)."""
    positions: dict[int, tuple[float, float]] = {}
    for k in range(6):
        angle = math.pi * k / 3
        positions[k] = (2 * math.cos(angle), 2 * math.sin(angle))
        positions[6 + k] = (math.cos(angle), math.sin(angle))
    sources = {k for k in range(6) if k % 2 == 0} | {6 + k for k in range(6) if k % 2 == 1}
    edges: list[tuple[int, int, int]] = []
    for k in range(6):
        n = (k + 1) % 6
        outer = (k, n) if k in sources else (n, k)
        inner = (6 + k, 6 + n) if 6 + k in sources else (6 + n, 6 + k)
        spoke = (k, 6 + k) if k in sources else (6 + k, k)
        edges += [(k, *outer), (6 + k, *inner), (12 + k, *spoke)]
    return _drawn_web(positions, sources, edges)


EXAMPLES: dict[str, Callable[[], Web]] = {
    "circle": circle,
    "two-circles": two_circles,
    "strand": strand,
    "theta": theta,
    "bubble": bubble,
    "bubble-closed": bubble_closed,
    "triad": triad,
    "jumping-jack": jumping_jack,
    "square": square,
    "square-capped": square_capped,
    "square-closed": square_closed,
    "double-square": double_square,
    "double-square-closed": double_square_closed,
    "cube": cube,
    "double-hexagon": double_hexagon,
}

EXAMPLE_NAMES = tuple(EXAMPLES)


def example(name: str) -> Web:
    try:
        return EXAMPLES[name]()
    except KeyError:
        raise ExampleNotFoundError(name) from None


def closed_examples() -> dict[str, Web]:
    return {name: web for name, web in ((n, f()) for n, f in EXAMPLES.items()) if web.is_closed}


# --- Random generator (inverse skein moves) ---


def _insert_theta(web: Web) -> Web:
    """Turn one free loop into a theta."""
    v, e = web.next_vertex_id(), web.next_edge_id()
    new_vertices = (
        Vertex(v, SOURCE, (tail(e), tail(e + 1), tail(e + 2))),
        Vertex(v + 1, SINK, (head(e + 2), head(e + 1), head(e))),
    )
    new_edges = tuple(Edge(e + k, v, v + 1) for k in range(3))
    return Web(web.vertices + new_vertices, web.edges + new_edges, web.free_loops - 1)


def _closed_ends(edge: Edge) -> tuple[int, int]:
    if edge.tail is None or edge.head is None:
        raise BoundedWebError("Move insertion")
    return edge.tail, edge.head


def _renamed(vertices: dict[int, Vertex], vertex_id: int, old: HalfEdgeRef, new: HalfEdgeRef) -> None:
    vertex = vertices[vertex_id]
    rotation = tuple(new if h == old else h for h in vertex.rotation)
    vertices[vertex_id] = Vertex(vertex.id, vertex.kind, rotation)


def _insert_bubble(web: Web, edge_id: int) -> Web:
    """Put a bubble on an edge; the edge keeps its id up to the new sink."""
    start, end = _closed_ends(web.edge(edge_id))
    a, b = web.next_vertex_id(), web.next_vertex_id() + 1
    e1, e2, e3 = (web.next_edge_id() + k for k in range(3))
    vertices = dict(web.vertex_map)
    _renamed(vertices, end, head(edge_id), head(e3))
    vertices[a] = Vertex(a, SINK, (head(e1), head(edge_id), head(e2)))
    vertices[b] = Vertex(b, SOURCE, (tail(e3), tail(e1), tail(e2)))
    edges = dict(web.edge_map)
    edges[edge_id] = Edge(edge_id, start, a)
    edges[e1], edges[e2], edges[e3] = Edge(e1, b, a), Edge(e2, b, a), Edge(e3, b, end)
    return Web(tuple(vertices.values()), tuple(edges.values()), web.free_loops)


def _insert_square(web: Web, first: int, second: int) -> Web:
    """Bridge two edges whose tail darts bound the same face with a new square."""
    first_tail, first_head = _closed_ends(web.edge(first))
    second_tail, second_head = _closed_ends(web.edge(second))
    c0, c1, c2, c3 = (web.next_vertex_id() + k for k in range(4))
    x0, x2, s01, s21, s23, s03 = (web.next_edge_id() + k for k in range(6))
    vertices = dict(web.vertex_map)
    _renamed(vertices, first_head, head(first), head(x0))
    _renamed(vertices, second_head, head(second), head(x2))
    vertices[c0] = Vertex(c0, SOURCE, (tail(s01), tail(s03), tail(x0)))
    vertices[c1] = Vertex(c1, SINK, (head(s21), head(s01), head(first)))
    vertices[c2] = Vertex(c2, SOURCE, (tail(x2), tail(s23), tail(s21)))
    vertices[c3] = Vertex(c3, SINK, (head(s23), head(second), head(s03)))
    edges = dict(web.edge_map)
    edges[first] = Edge(first, first_tail, c1)
    edges[second] = Edge(second, second_tail, c3)
    for new_edge in (
        Edge(x0, c0, first_head),
        Edge(x2, c2, second_head),
        Edge(s01, c0, c1),
        Edge(s21, c2, c1),
        Edge(s23, c2, c3),
        Edge(s03, c0, c3),
    ):
        edges[new_edge.id] = new_edge
    return Web(tuple(vertices.values()), tuple(edges.values()), web.free_loops)


def _square_slots(web: Web) -> list[list[int]]:
    """For each face, the edges leaving it along a tail dart, when there are two or more."""
    slots = []
    for face in faces(web):
        tails = [d.edge_id for d in face.darts if d.end is End.TAIL]
        if len(tails) >= 2:
            slots.append(tails)
    return slots


def random_web(rng: random.Random, max_vertices: int = 14) -> Web:
    """Valid closed web grown from one or two free loops by inverse skein moves."""
    web = Web(free_loops=rng.randint(1, 2))
    target = rng.randrange(2, max(max_vertices, 2) + 1, 2)
    while web.vertex_count < target:
        room = max_vertices - web.vertex_count
        slots = _square_slots(web) if room >= 4 else []
        moves = ["loop"] * bool(web.free_loops) + ["edge"] * bool(web.edges)
        moves += ["square"] * bool(slots)
        if room < 2 or not moves:
            break
        move = rng.choice(moves)
        if move == "loop":
            web = _insert_theta(web)
        elif move == "edge":
            web = _insert_bubble(web, rng.choice(web.edges).id)
        else:
            first, second = rng.sample(rng.choice(slots), 2)
            web = _insert_square(web, first, second)
    logger.debug("Random web generated", vertices=web.vertex_count, loops=web.free_loops)
    return web
