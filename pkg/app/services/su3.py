"""SU(3) representation spaces of webs, sampled and measured numerically.

A representation puts a complex line of C^3 on every edge so that the three
lines at each vertex are pairwise orthogonal. Points are produced by running a
random skein reduction down to a vertex-free web, sampling lines there, and
lifting them back through each move:

* bubble: the two sides are an orthonormal pair inside the merged edge's
  orthogonal complement;
* square: the sides cut by the smoothing share the line ``w`` orthogonal to
  both arcs, and each kept side is the complement of its arc line and ``w``;
* a bounded web with no reducible face is glued to its mirror image first.
"""

import re
from collections import Counter, deque
from collections.abc import Iterable, Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations

import numpy as np
import numpy.typing as npt
import structlog

from app.core.config import settings
from app.core.exceptions import (
    BoundaryShapeError,
    InvalidRepresentationError,
    NoReducibleFaceError,
    PinFormatError,
    RepresentationNotFoundError,
)
from app.core.settings import NumericConfig
from app.models.representation import (
    BoundaryDiagonalReport,
    Census,
    ComplexVector,
    ComponentReport,
    DimensionEstimate,
    Line,
    RepresentationPoint,
    SquareClass,
)
from app.models.resolution import Geodesic, MoveKind, MoveRecord, Parity
from app.models.web import End, Face, Sign, Web
from app.services.skein import Surgery, arc_ends, boundary_glue_surgery, bubble_surgery, square_surgery
from app.services.topology import (
    boundary_signs,
    disjoint_union,
    external_half_edges,
    face_by_anchor,
    interior_faces,
    mirror,
    reverse_orientation,
)

logger = structlog.get_logger()

Key = tuple[str, int]
Basis = npt.NDArray[np.complex128]

_FULL: Basis = np.eye(3, dtype=np.complex128)
_PIN = re.compile(r"^(\d+)=([^,]+),([^,]+),([^,]+)$")
_SEED_MASK = (1 << 64) - 1


class _Contradiction(Exception):
    """Raised inside a lift when the sampled lines cannot be extended."""


# --- Linear algebra ---


def _null_space(matrix: Basis, tol: float) -> Basis:
    if matrix.shape[0] == 0:
        return np.eye(matrix.shape[1], dtype=np.complex128)
    _, s, vh = np.linalg.svd(matrix)
    rank = int(np.sum(s > tol))
    return vh[rank:].conj().T


def _orthonormal(vectors: Basis, tol: float) -> Basis:
    if vectors.shape[1] == 0:
        return vectors
    u, s, _ = np.linalg.svd(vectors, full_matrices=False)
    return u[:, s > tol]


def _intersect(a: Basis, b: Basis, tol: float) -> Basis:
    """Orthonormal basis of span(a) ∩ span(b)."""
    if a.shape[1] == 3:
        return b
    if b.shape[1] == 3 or a.shape[1] == 0:
        return a
    if b.shape[1] == 0:
        return b
    kernel = _null_space(np.hstack([a, -b]), tol)
    return _orthonormal(a @ kernel[: a.shape[1]], tol)


def _perp(space: Basis, vector: ComplexVector, tol: float) -> Basis:
    """Vectors of ``space`` orthogonal to ``vector``."""
    if space.shape[1] == 0:
        return space
    row = (vector.conj() @ space)[None, :]
    return space @ _null_space(row, tol)


def _contains(space: Basis, vector: ComplexVector, tol: float) -> bool:
    if space.shape[1] == 3:
        return True
    return bool(np.linalg.norm(vector - space @ (space.conj().T @ vector)) < tol)


def _complement(a: ComplexVector, b: ComplexVector) -> ComplexVector:
    """Unit vector orthogonal to both ``a`` and ``b``."""
    w = np.conj(np.cross(a, b))
    norm = np.linalg.norm(w)
    if norm < 1e-12:
        raise _Contradiction("parallel lines have no unique complement")
    return w / norm


def meridian_matrix(line: Line) -> npt.NDArray[np.complex128]:
    """2vv* - I: fixes the line, negates its complement; trace -1, determinant 1."""
    v = line.v
    return 2 * np.outer(v, v.conj()) - np.eye(3, dtype=np.complex128)


# --- Lifting ---


class _Lifter:
    """One randomized reduce-and-lift pass; raises _Contradiction on a dead end."""

    def __init__(
        self,
        rng: np.random.Generator,
        config: NumericConfig,
        plan: Sequence[tuple[int, MoveRecord]] | None = None,
    ) -> None:
        self._rng = rng
        self._config = config
        self._plan = deque(plan) if plan is not None else None
        self.observed: dict[int, SquareClass] = {}

    @property
    def _tol(self) -> float:
        return self._config.near_parallel_tolerance

    def solve(self, web: Web, constraints: dict[Key, Basis]) -> dict[Key, ComplexVector]:
        if not web.vertices:
            return self._free(web, constraints)
        step = self._next_step(web, constraints)
        if step is None:
            if not web.is_closed:
                return self._double(web, constraints)
            raise NoReducibleFaceError(web.vertex_count)
        face, keep, index = step
        if face.size == 2:
            return self._bubble(web, face, constraints)
        return self._square(web, face, keep, constraints, index)

    # -- choosing moves --

    def _next_step(
        self, web: Web, constraints: Mapping[Key, Basis]
    ) -> tuple[Face, Parity, int | None] | None:
        if self._plan is not None:
            while self._plan:
                index, move = self._plan.popleft()
                if move.kind is MoveKind.CIRCLE:
                    continue
                face = face_by_anchor(web, move.face or "")
                return face, move.keep or Parity.EVEN, index
            return None
        candidates = [f for f in interior_faces(web) if f.size in (2, 4)]
        if not candidates:
            return None

        def score(face: Face) -> int:
            touched = {d.edge_id for d in face.darts}
            touched |= {h.edge_id for h in external_half_edges(web, face)}
            return sum(("e", e) in constraints for e in touched)

        top = max(map(score, candidates))
        best = [f for f in candidates if score(f) == top]
        face = best[int(self._rng.integers(len(best)))]
        keep = Parity.EVEN if self._rng.integers(2) == 0 else Parity.ODD
        return face, keep, None

    # -- constraints --

    def _sample(self, space: Basis) -> ComplexVector:
        k = space.shape[1]
        if k == 0:
            raise _Contradiction("empty constraint space")
        coefficients = self._rng.standard_normal(k) + 1j * self._rng.standard_normal(k)
        vector = space @ coefficients
        return vector / np.linalg.norm(vector)

    def _restrict(self, store: dict[Key, Basis], key: Key, space: Basis) -> None:
        store[key] = _intersect(store[key], space, self._tol) if key in store else space
        if store[key].shape[1] == 0:
            raise _Contradiction(f"constraints on {key} are incompatible")

    def _require(self, space: Basis, vector: ComplexVector) -> None:
        if not _contains(space, vector, self._tol):
            raise _Contradiction("lifted line violates a pin")

    @staticmethod
    def _pinned(constraints: Mapping[Key, Basis], key: Key) -> ComplexVector | None:
        space = constraints.get(key)
        if space is None or space.shape[1] != 1:
            return None
        vector: ComplexVector = space[:, 0]
        return vector

    def _push(self, surgery: Surgery, constraints: Mapping[Key, Basis]) -> dict[Key, Basis]:
        child: dict[Key, Basis] = {}
        for key, space in constraints.items():
            target = _image(surgery, key)
            if target is not None:
                self._restrict(child, target, space)
        return child

    def _perp_of_pin(self, constraints: Mapping[Key, Basis], key: Key) -> Basis | None:
        pin = self._pinned(constraints, key)
        return None if pin is None else _perp(_FULL, pin, self._tol)

    # -- base cases --

    def _free(self, web: Web, constraints: Mapping[Key, Basis]) -> dict[Key, ComplexVector]:
        keys = [("e", e.id) for e in web.edges] + [("l", i) for i in range(web.free_loops)]
        return {key: self._sample(constraints.get(key, _FULL)) for key in keys}

    def _double(self, web: Web, constraints: Mapping[Key, Basis]) -> dict[Key, ComplexVector]:
        """Glue the web to its mirror image along the boundary and solve the closed result."""
        shift = web.next_edge_id()
        joined = disjoint_union(web, reverse_orientation(mirror(web)))
        pairs = [
            (h.edge_id, h.edge_id + shift) if h.end is End.HEAD else (h.edge_id + shift, h.edge_id)
            for h in web.boundary
        ]
        surgery = boundary_glue_surgery(joined, pairs)
        child = self.solve(surgery.web, self._push(surgery, constraints))
        return _pull(web, surgery, child)

    # -- lifts --

    def _bubble(
        self, web: Web, face: Face, constraints: Mapping[Key, Basis]
    ) -> dict[Key, ComplexVector]:
        surgery = bubble_surgery(web, face)
        incoming, _ = arc_ends(web, face, 0, 1)
        merged = _image(surgery, ("e", incoming))
        assert merged is not None
        first, second = (("e", d.edge_id) for d in face.darts)

        child_constraints = self._push(surgery, constraints)
        for side in (first, second):
            space = self._perp_of_pin(constraints, side)
            if space is not None:
                self._restrict(child_constraints, merged, space)
        child = self.solve(surgery.web, child_constraints)

        x = child[merged]
        space = _perp(constraints.get(first, _FULL), x, self._tol)
        other_pin = self._pinned(constraints, second)
        if other_pin is not None:
            space = _perp(space, other_pin, self._tol)
        lines = _pull(web, surgery, child)
        lines[first] = self._sample(space)
        lines[second] = _complement(x, lines[first])
        self._require(constraints.get(second, _FULL), lines[second])
        return lines

    def _square(
        self,
        web: Web,
        face: Face,
        keep: Parity,
        constraints: Mapping[Key, Basis],
        index: int | None,
    ) -> dict[Key, ComplexVector]:
        p = keep.offset
        surgery = square_surgery(web, face, keep)
        sides: list[Key] = [("e", d.edge_id) for d in face.darts]
        first, _ = arc_ends(web, face, p, p + 1)
        second, _ = arc_ends(web, face, p + 2, (p + 3) % 4)
        key_a, key_b = _image(surgery, ("e", first)), _image(surgery, ("e", second))
        assert key_a is not None and key_b is not None
        cut = (sides[(p + 1) % 4], sides[(p + 3) % 4])
        kept = ((sides[p], key_a), (sides[p + 2], key_b))

        child_constraints = self._push(surgery, constraints)
        for side in cut:
            space = self._perp_of_pin(constraints, side)
            if space is not None:
                self._restrict(child_constraints, key_a, space)
                self._restrict(child_constraints, key_b, space)
        for side, key in kept:
            space = self._perp_of_pin(constraints, side)
            if space is not None:
                self._restrict(child_constraints, key, space)
        child = self.solve(surgery.web, child_constraints)

        a, b = child[key_a], child[key_b]
        cut_space = _intersect(
            constraints.get(cut[0], _FULL), constraints.get(cut[1], _FULL), self._tol
        )
        gap = 1.0 - abs(np.vdot(a, b))
        if key_a == key_b or gap < self._config.line_tolerance:
            space = _perp(cut_space, a, self._tol)
            for side, _ in kept:
                pin = self._pinned(constraints, side)
                if pin is not None:
                    space = _perp(space, pin, self._tol)
            w = self._sample(space)
        elif gap < self._config.near_parallel_tolerance:
            raise _Contradiction("arc lines are nearly parallel")
        else:
            w = _complement(a, b)
            self._require(cut_space, w)

        lines = _pull(web, surgery, child)
        lines[cut[0]] = lines[cut[1]] = w
        lines[sides[p]] = _complement(a, w)
        lines[sides[p + 2]] = _complement(b, w)
        for side, _ in kept:
            self._require(constraints.get(side, _FULL), lines[side])
        if index is not None:
            externals = [lines[("e", h.edge_id)] for h in external_half_edges(web, face)]
            self.observed[index] = _classify(externals, self._config.line_tolerance)
        return lines


def _image(surgery: Surgery, key: Key) -> Key | None:
    """Where an input edge or loop ended up after a move; None if it was deleted."""
    kind, i = key
    if kind == "l":
        return key
    if i in surgery.edge_map:
        return ("e", surgery.edge_map[i])
    if i in surgery.loop_map:
        return ("l", surgery.loop_map[i])
    return None


def _pull(
    web: Web, surgery: Surgery, child: Mapping[Key, ComplexVector]
) -> dict[Key, ComplexVector]:
    lines: dict[Key, ComplexVector] = {}
    for edge in web.edges:
        target = _image(surgery, ("e", edge.id))
        if target is not None:
            lines[("e", edge.id)] = child[target]
    for i in range(web.free_loops):
        lines[("l", i)] = child[("l", i)]
    return lines


def _to_point(web: Web, lines: Mapping[Key, ComplexVector], seed: int | None) -> RepresentationPoint:
    return RepresentationPoint(
        lines={e.id: Line.from_vector(lines[("e", e.id)]) for e in web.edges},
        loops=tuple(Line.from_vector(lines[("l", i)]) for i in range(web.free_loops)),
        seed=seed,
    )


def _classify(externals: Sequence[ComplexVector], tol: float) -> SquareClass:
    def same(i: int, j: int) -> bool:
        return 1.0 - abs(np.vdot(externals[i], externals[j])) < tol

    if all(same(0, k) for k in (1, 2, 3)):
        return SquareClass.SMALL
    if same(0, 1) and same(2, 3):
        return SquareClass.BIG_EVEN
    if same(1, 2) and same(3, 0):
        return SquareClass.BIG_ODD
    return SquareClass.INCONSISTENT


# --- Search ---


def parse_pin(spec: str) -> tuple[int, Line]:
    """``<edge>=<a>,<b>,<c>`` with Python complex literals, e.g. ``3=1,1j,0``."""
    match = _PIN.match(spec.replace(" ", ""))
    if match is None:
        raise PinFormatError(spec)
    try:
        vector = [complex(part) for part in match.groups()[1:]]
        return int(match[1]), Line.from_vector(vector)
    except ValueError as exc:
        raise PinFormatError(spec) from exc


def _search(
    web: Web,
    seed: int,
    pins: Mapping[int, Line],
    config: NumericConfig,
    plan: Sequence[tuple[int, MoveRecord]] | None = None,
) -> tuple[RepresentationPoint, _Lifter]:
    for edge_id in pins:
        if edge_id not in web.edge_map:
            raise PinFormatError(f"edge {edge_id} is not in the web")
    constraints: dict[Key, Basis] = {("e", e): line.v.reshape(3, 1) for e, line in pins.items()}
    for attempt in range(config.restart_budget):
        lifter = _Lifter(np.random.default_rng([seed & _SEED_MASK, attempt]), config, plan)
        try:
            lines = lifter.solve(web, dict(constraints))
        except _Contradiction as exc:
            logger.debug("Representation restart", seed=seed, attempt=attempt, reason=str(exc))
            continue
        point = _to_point(web, lines, seed)
        report = check_representation(web, point, config)
        if (
            report.residual < config.residual_tolerance
            and report.relator_residual <= config.relator_tolerance
        ):
            logger.debug("Representation found", seed=seed, attempts=attempt + 1)
            return point, lifter
        logger.debug("Representation rejected", seed=seed, residual=report.residual)
    raise RepresentationNotFoundError(config.restart_budget)


def find_representation(
    web: Web,
    seed: int | None = None,
    pins: Mapping[int, Line] | None = None,
    config: NumericConfig | None = None,
) -> RepresentationPoint:
    """A random point of R(web), deterministic in ``seed``; ``pins`` fix edge lines."""
    config = config or settings.numeric
    seed = settings.resolve.default_seed if seed is None else seed
    point, _ = _search(web, seed, pins or {}, config)
    return point


def check_representation(
    web: Web, point: RepresentationPoint, config: NumericConfig | None = None
) -> ComponentReport:
    """Worst orthogonality defect and worst relator defect over all vertices."""
    residual = 0.0
    relator = 0.0
    identity = np.eye(3, dtype=np.complex128)
    for vertex in web.vertices:
        lines = [point.lines[h.edge_id] for h in vertex.rotation]
        for x, y in combinations(lines, 2):
            residual = max(residual, x.overlap(y))
        product = identity
        for line in lines:
            product = product @ meridian_matrix(line)
        relator = max(relator, float(np.linalg.norm(product - identity)))
    return ComponentReport(residual=residual, relator_residual=relator, seed=point.seed)


def act(point: RepresentationPoint, unitary: npt.ArrayLike) -> RepresentationPoint:
    """Move every line by the same unitary; representations map to representations."""
    u = np.asarray(unitary, dtype=np.complex128)
    return RepresentationPoint(
        lines={e: Line.from_vector(u @ line.v) for e, line in point.lines.items()},
        loops=tuple(Line.from_vector(u @ line.v) for line in point.loops),
        seed=point.seed,
    )


# --- Tangent spaces ---


def _chart(v: ComplexVector) -> tuple[ComplexVector, ComplexVector]:
    _, _, vh = np.linalg.svd(v.conj()[None, :])
    return vh[1].conj(), vh[2].conj()


def _parameters(web: Web, point: RepresentationPoint) -> list[ComplexVector]:
    return [point.lines[e.id].v for e in web.edges] + [line.v for line in point.loops]


def constraint_map(
    web: Web, point: RepresentationPoint, t: npt.ArrayLike
) -> npt.NDArray[np.float64]:
    """Re and Im of <v_i, v_j> for every vertex pair, with each line moved in its chart.

    Line k moves to v + (t[4k] + i t[4k+1]) n1 + (t[4k+2] + i t[4k+3]) n2.
    """
    shift = np.asarray(t, dtype=np.float64)
    moved: dict[int, ComplexVector] = {}
    for k, (edge, v) in enumerate(zip(web.edges, _parameters(web, point), strict=False)):
        n1, n2 = _chart(v)
        c = shift[4 * k : 4 * k + 4]
        moved[edge.id] = v + (c[0] + 1j * c[1]) * n1 + (c[2] + 1j * c[3]) * n2
    values: list[float] = []
    for vertex in web.vertices:
        for x, y in combinations([h.edge_id for h in vertex.rotation], 2):
            f = np.vdot(moved[x], moved[y])
            values += [f.real, f.imag]
    return np.array(values, dtype=np.float64)


def constraint_jacobian(web: Web, point: RepresentationPoint) -> npt.NDArray[np.float64]:
    """Derivative of :func:`constraint_map` at t = 0; one 4-column block per edge and loop."""
    vectors = _parameters(web, point)
    column = {edge.id: 4 * k for k, edge in enumerate(web.edges)}
    rows = 6 * len(web.vertices)
    jacobian = np.zeros((rows, 4 * len(vectors)), dtype=np.float64)
    charts = {edge.id: _chart(vectors[k]) for k, edge in enumerate(web.edges)}
    row = 0
    for vertex in web.vertices:
        for x, y in combinations([h.edge_id for h in vertex.rotation], 2):
            vx, vy = point.lines[x].v, point.lines[y].v
            derivatives = np.zeros(4 * len(vectors), dtype=np.complex128)
            for offset, n in enumerate(charts[x]):
                d = np.vdot(n, vy)
                derivatives[column[x] + 2 * offset] += d
                derivatives[column[x] + 2 * offset + 1] += -1j * d
            for offset, n in enumerate(charts[y]):
                d = np.vdot(vx, n)
                derivatives[column[y] + 2 * offset] += d
                derivatives[column[y] + 2 * offset + 1] += 1j * d
            jacobian[row] = derivatives.real
            jacobian[row + 1] = derivatives.imag
            row += 2
    return jacobian


def local_dimension(
    web: Web, point: RepresentationPoint, config: NumericConfig | None = None
) -> DimensionEstimate:
    """Real dimension of R(web) at ``point``: parameters minus the Jacobian rank."""
    config = config or settings.numeric
    jacobian = constraint_jacobian(web, point)
    singular = (
        np.linalg.svd(jacobian, compute_uv=False) if jacobian.size else np.zeros(0)
    )
    top = float(singular[0]) if singular.size else 0.0
    rank = int(np.sum(singular > config.rank_tolerance * top)) if top > 0 else 0
    if 0 < rank < singular.size and singular[rank] > 0:
        gap = float(singular[rank - 1] / singular[rank])
    else:
        gap = float("inf")
    if gap < config.rank_gap_ratio:
        logger.warning(
            "Rank gap below threshold",
            rank=rank,
            gap=gap,
            around=[float(s) for s in singular[max(rank - 1, 0) : rank + 1]],
            seed=point.seed,
        )
    return DimensionEstimate(
        est_dim=jacobian.shape[1] - rank,
        rank=rank,
        parameters=jacobian.shape[1],
        singular_values=tuple(float(s) for s in singular),
        rank_gap=gap,
    )


# --- Components ---


def classify_square(
    web: Web, square: Face, point: RepresentationPoint, config: NumericConfig | None = None
) -> SquareClass:
    """Which opposite pair of external lines coincides around ``square``."""
    config = config or settings.numeric
    report = check_representation(web, point, config)
    if report.residual >= config.residual_tolerance:
        raise InvalidRepresentationError(report.residual)
    externals = [point.lines[h.edge_id].v for h in external_half_edges(web, square)]
    return _classify(externals, config.line_tolerance)


def _spawn_seeds(seed: int, count: int) -> list[int]:
    children = np.random.SeedSequence(seed & _SEED_MASK).spawn(count)
    return [int(child.generate_state(1)[0]) for child in children]


def component_census(
    web: Web,
    squares: Sequence[Face] | None = None,
    samples: int = 32,
    seed: int = 0,
    witnesses: Iterable[Mapping[int, Line]] = (),
    config: NumericConfig | None = None,
) -> Census:
    """Histogram of square-class tuples over random points and pinned witnesses."""
    config = config or settings.numeric
    squares = list(squares) if squares is not None else [
        f for f in interior_faces(web) if f.size == 4
    ]

    def classes_at(point: RepresentationPoint) -> tuple[SquareClass, ...]:
        return tuple(classify_square(web, f, point, config) for f in squares)

    def sample(child_seed: int) -> tuple[SquareClass, ...]:
        return classes_at(find_representation(web, child_seed, None, config))

    seeds = _spawn_seeds(seed, samples)
    with ThreadPoolExecutor(max_workers=max(config.census_workers, 1)) as pool:
        results: list[tuple[tuple[SquareClass, ...], int | None]] = list(
            zip(pool.map(sample, seeds), seeds, strict=True)
        )
    for pins in witnesses:
        results.append((classes_at(find_representation(web, seed, pins, config)), None))

    histogram = Counter(classes for classes, _ in results)
    found: dict[tuple[SquareClass, ...], int | None] = {}
    for classes, witness in results:
        found.setdefault(classes, witness)
    logger.info(
        "Component census finished",
        squares=len(squares),
        samples=len(results),
        classes=len(histogram),
    )
    return Census(
        squares=tuple(f.anchor_token for f in squares),
        histogram=dict(histogram),
        witnesses=found,
        samples=len(results),
    )


def check_boundary_diagonal(
    web: Web, samples: int = 8, seed: int = 0, config: NumericConfig | None = None
) -> BoundaryDiagonalReport:
    """On a web with boundary (+, -) the two boundary lines agree at every sampled point."""
    config = config or settings.numeric
    signs = boundary_signs(web)
    if sorted(signs) != sorted((Sign.IN, Sign.OUT)):
        raise BoundaryShapeError("boundary signs (+,-)", ",".join(s.value for s in signs))
    first, second = (h.edge_id for h in web.boundary)
    deviation = 0.0
    for child_seed in _spawn_seeds(seed, samples):
        point = find_representation(web, child_seed, None, config)
        deviation = max(deviation, 1.0 - point.lines[first].overlap(point.lines[second]))
    return BoundaryDiagonalReport(
        holds=deviation < config.line_tolerance, samples=samples, max_deviation=deviation
    )


def trace_geodesic(
    web: Web, geodesic: Geodesic, seed: int = 0, config: NumericConfig | None = None
) -> dict[int, SquareClass]:
    """Classes observed at each square move while lifting a point along ``geodesic``."""
    config = config or settings.numeric
    _, lifter = _search(web, seed, {}, config, list(enumerate(geodesic.moves)))
    return dict(lifter.observed)
