"""Z/3 edge colorings of closed webs."""

from collections import deque

import structlog

from app.core.config import settings
from app.core.exceptions import (
    BoundedWebError,
    ColoringLimitError,
    DisconnectedWebError,
    InconsistentLabelingError,
)
from app.core.settings import ResolveConfig
from app.models.web import Coloring, Face, Side, Web
from app.services.topology import faces, is_connected

logger = structlog.get_logger()


def natural_coloring(web: Web, base_face: Face | None = None, base_label: int = 0) -> Coloring:
    """Color edges by face labels propagated from ``base_face``.

    Crossing an edge from its right side to its left raises the label by one,
    and each edge takes the label of the face on its left. Around any vertex the
    three faces then carry three distinct labels, so the coloring is proper.
    """
    if not web.is_closed:
        raise BoundedWebError("Natural coloring")
    if not is_connected(web):
        raise DisconnectedWebError("Natural coloring")
    all_faces = faces(web)
    base = all_faces.index(base_face) if base_face is not None else 0
    owner: dict[tuple[int, Side], int] = {
        incidence: index for index, face in enumerate(all_faces) for incidence in face.boundary
    }
    labels: dict[int, int] = {base: base_label % 3}
    queue = deque([base])
    while queue:
        index = queue.popleft()
        for edge_id, side in all_faces[index].boundary:
            if side is Side.LEFT:
                across, step = owner[(edge_id, Side.RIGHT)], -1
            else:
                across, step = owner[(edge_id, Side.LEFT)], 1
            label = (labels[index] + step) % 3
            if across not in labels:
                labels[across] = label
                queue.append(across)
            elif labels[across] != label:
                raise InconsistentLabelingError(edge_id)
    colors = {edge.id: labels[owner[(edge.id, Side.LEFT)]] for edge in web.edges}
    face_labels = {face.anchor: labels[i] for i, face in enumerate(all_faces)}
    return Coloring(colors, face_labels)


def is_proper(web: Web, coloring: Coloring) -> bool:
    """Three distinct colors at every vertex."""
    return all(
        len({coloring.colors[h.edge_id] for h in vertex.rotation}) == 3
        for vertex in web.vertices
    )


def count_edge_colorings(web: Web, config: ResolveConfig | None = None) -> int:
    """Number of proper Z/3 edge colorings, each free loop counting as a 3-colored edge."""
    limit = (config or settings.resolve).coloring_edge_limit
    if not web.is_closed:
        raise BoundedWebError("Coloring count")
    if len(web.edges) > limit:
        raise ColoringLimitError(len(web.edges), limit)

    edge_ids = [edge.id for edge in web.edges]
    neighbours: dict[int, set[int]] = {e: set() for e in edge_ids}
    for vertex in web.vertices:
        at_vertex = {h.edge_id for h in vertex.rotation}
        for e in at_vertex:
            neighbours[e] |= at_vertex - {e}

    assignment: dict[int, int] = {}

    def extend(position: int) -> int:
        if position == len(edge_ids):
            return 1
        edge_id = edge_ids[position]
        taken = {assignment[n] for n in neighbours[edge_id] if n in assignment}
        found = 0
        for color in range(3):
            if color in taken:
                continue
            assignment[edge_id] = color
            found += extend(position + 1)
            del assignment[edge_id]
        return found

    count = extend(0) * 3**web.free_loops
    logger.debug("Edge colorings counted", edges=len(edge_ids), colorings=count)
    return count
