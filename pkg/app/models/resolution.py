"""Resolution trees, geodesics and algebra traces."""

from dataclasses import dataclass, field
from enum import StrEnum

from app.models.laurent import LaurentPoly, quantum_int
from app.models.web import Web


class MoveKind(StrEnum):
    CIRCLE = "circle"
    BUBBLE = "bubble"
    SQUARE = "square"


class Parity(StrEnum):
    """Which opposite pair of square sides survives a smoothing (positions 0,2 or 1,3)."""

    EVEN = "even"
    ODD = "odd"

    @property
    def offset(self) -> int:
        return 0 if self is Parity.EVEN else 1


@dataclass(frozen=True)
class MoveRecord:
    kind: MoveKind
    face: str | None = None
    keep: Parity | None = None

    def __post_init__(self) -> None:
        if (self.keep is not None) != (self.kind is MoveKind.SQUARE):
            raise ValueError("keep is set exactly for square moves")

    @property
    def label(self) -> str:
        if self.kind is MoveKind.CIRCLE:
            return "circle"
        suffix = f" keep={self.keep.value}" if self.keep is not None else ""
        return f"{self.kind.value} {self.face}{suffix}"

    def as_dict(self) -> dict[str, str | None]:
        return {
            "move": self.kind.value,
            "face": self.face,
            "keep": None if self.keep is None else self.keep.value,
        }


@dataclass(frozen=True)
class ResolutionNode:
    index: int
    web: Web
    parent: int | None = None
    move: MoveRecord | None = None
    children: tuple[int, ...] = ()

    @property
    def is_leaf(self) -> bool:
        return not self.web.vertices and self.web.free_loops == 0


@dataclass(frozen=True)
class ResolutionTree:
    """Nodes in creation order; node 0 is the root."""

    nodes: tuple[ResolutionNode, ...]

    @property
    def root(self) -> ResolutionNode:
        return self.nodes[0]

    @property
    def leaves(self) -> list[ResolutionNode]:
        return [n for n in self.nodes if not n.children]

    def path_to(self, index: int) -> list[ResolutionNode]:
        """Nodes from the root down to ``index``."""
        path = [self.nodes[index]]
        while path[-1].parent is not None:
            path.append(self.nodes[path[-1].parent])
        return path[::-1]


@dataclass(frozen=True)
class Geodesic:
    moves: tuple[MoveRecord, ...]
    b: int
    c: int
    leaf: int = 0


def geodesic_contribution(g: Geodesic) -> LaurentPoly:
    """[2]^b [3]^c."""
    return quantum_int(2) ** g.b * quantum_int(3) ** g.c


class TraceStepKind(StrEnum):
    LEAF_INIT = "leaf-init"
    BUBBLE_ADJOIN = "bubble-adjoin-gamma"
    SQUARE_BIG = "square-pullback-big"
    SQUARE_SMALL = "square-pullback-small"
    SQUARE_UNCLASSIFIED = "square-pullback-unclassified"


@dataclass(frozen=True)
class TraceStep:
    kind: TraceStepKind
    circles: int = 0
    face: str | None = None

    @property
    def label(self) -> str:
        if self.kind is TraceStepKind.LEAF_INIT:
            return f"leaf-init({self.circles})"
        return self.kind.value


@dataclass(frozen=True)
class AlgebraTrace:
    """Geodesic replayed from leaf to root."""

    steps: tuple[TraceStep, ...] = field(default_factory=tuple)

    def implied_polynomial(self) -> LaurentPoly:
        """[3]^c from the leaf, times [2] per bubble; squares multiply by 1."""
        poly = LaurentPoly.constant(1)
        for step in self.steps:
            if step.kind is TraceStepKind.LEAF_INIT:
                poly = poly * quantum_int(3) ** step.circles
            elif step.kind is TraceStepKind.BUBBLE_ADJOIN:
                poly = poly * quantum_int(2)
        return poly

    @property
    def labels(self) -> list[str]:
        return [step.label for step in self.steps]
