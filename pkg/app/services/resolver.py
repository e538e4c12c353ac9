"""Spider evaluation by exhaustive skein resolution.

A resolution tree applies one move per node: remove a circle (x[3]), smash a
bubble (x[2]) or smooth a square (sum of two children). Every root-to-leaf path
is a geodesic contributing [2]^b [3]^c, and the evaluation is their sum.
"""

import random
import re
from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, replace
from typing import Protocol

import structlog

from app.core.config import settings
from app.core.exceptions import BoundedWebError, NoReducibleFaceError, PolicyFormatError
from app.models.laurent import LaurentPoly, total
from app.models.representation import SquareClass
from app.models.resolution import (
    AlgebraTrace,
    Geodesic,
    MoveKind,
    MoveRecord,
    Parity,
    ResolutionNode,
    ResolutionTree,
    TraceStep,
    TraceStepKind,
    geodesic_contribution,
)
from app.models.web import Face, Web
from app.services.skein import remove_circle, smash_bubble, smooth_square
from app.services.topology import face_by_anchor, faces, find_reducible_face

logger = structlog.get_logger()

__all__ = [
    "DefaultPolicy",
    "RandomPolicy",
    "algebra_trace",
    "apply_move",
    "build_tree",
    "check_policy_invariance",
    "geodesic_contribution",
    "geodesics",
    "parse_policy",
    "replay",
    "spider_eval",
    "state_sum",
    "tree_to_dot",
]


@dataclass(frozen=True)
class Choice:
    kind: MoveKind
    face: Face | None = None


class MovePolicy(Protocol):
    name: str

    def choose(self, web: Web) -> Choice | None:
        """Next move for a closed web, or None for an empty leaf."""
        ...


def _reducible(web: Web) -> list[Face]:
    return [f for f in faces(web) if f.size in (2, 4)]


class DefaultPolicy:
    """Circles first, then the first bubble, then the first square."""

    name = "default"

    def choose(self, web: Web) -> Choice | None:
        if web.free_loops:
            return Choice(MoveKind.CIRCLE)
        if not web.vertices:
            return None
        face = find_reducible_face(web)
        if face is None:
            raise NoReducibleFaceError(web.vertex_count)
        return Choice(MoveKind.BUBBLE if face.size == 2 else MoveKind.SQUARE, face)


class RandomPolicy:
    """Uniform choice among every available circle, bubble and square move."""

    def __init__(self, seed: int = 0) -> None:
        self._seed = seed
        self._rng = random.Random(seed)

    @property
    def name(self) -> str:
        return f"random:{self._seed}"

    def choose(self, web: Web) -> Choice | None:
        if not web.vertices and not web.free_loops:
            return None
        options: list[Choice] = [Choice(MoveKind.CIRCLE)] if web.free_loops else []
        if web.vertices:
            options += [
                Choice(MoveKind.BUBBLE if f.size == 2 else MoveKind.SQUARE, f)
                for f in _reducible(web)
            ]
        if not options:
            raise NoReducibleFaceError(web.vertex_count)
        return self._rng.choice(options)


_RANDOM_SPEC = re.compile(r"^random(?::(-?\d+))?$")


def parse_policy(spec: str, seed: int | None = None) -> MovePolicy:
    """``default``, ``random`` (uses ``seed``) or ``random:<seed>``."""
    if spec == "default":
        return DefaultPolicy()
    match = _RANDOM_SPEC.match(spec)
    if match is None:
        raise PolicyFormatError(spec)
    if match[1] is not None:
        return RandomPolicy(int(match[1]))
    return RandomPolicy(settings.resolve.default_seed if seed is None else seed)


# --- Moves ---


def apply_move(web: Web, move: MoveRecord) -> Web:
    """Apply a recorded move; faces are looked up by anchor."""
    if move.kind is MoveKind.CIRCLE:
        return remove_circle(web)
    face = face_by_anchor(web, move.face or "")
    if move.kind is MoveKind.BUBBLE:
        return smash_bubble(web, face)
    assert move.keep is not None
    return smooth_square(web, face, move.keep)


def replay(web: Web, moves: Iterable[MoveRecord]) -> list[Web]:
    """States visited along a move sequence, starting with ``web`` itself."""
    states = [web]
    for move in moves:
        states.append(apply_move(states[-1], move))
    return states


def _expand(web: Web, policy: MovePolicy) -> list[tuple[MoveRecord, Web]]:
    choice = policy.choose(web)
    if choice is None:
        return []
    if choice.kind is MoveKind.CIRCLE:
        return [(MoveRecord(MoveKind.CIRCLE), remove_circle(web))]
    assert choice.face is not None
    anchor = choice.face.anchor_token
    if choice.kind is MoveKind.BUBBLE:
        return [(MoveRecord(MoveKind.BUBBLE, anchor), smash_bubble(web, choice.face))]
    return [
        (MoveRecord(MoveKind.SQUARE, anchor, keep), smooth_square(web, choice.face, keep))
        for keep in Parity
    ]


# --- Trees ---


def build_tree(web: Web, policy: MovePolicy | None = None) -> ResolutionTree:
    """Expand ``web`` breadth-first until every branch ends at the empty web."""
    if not web.is_closed:
        raise BoundedWebError("Spider evaluation")
    policy = policy or DefaultPolicy()
    nodes: list[ResolutionNode] = [ResolutionNode(0, web)]
    children: dict[int, list[int]] = {}
    queue = deque([0])
    while queue:
        index = queue.popleft()
        for move, child in _expand(nodes[index].web, policy):
            child_index = len(nodes)
            nodes.append(ResolutionNode(child_index, child, parent=index, move=move))
            children.setdefault(index, []).append(child_index)
            queue.append(child_index)
    tree = ResolutionTree(
        tuple(replace(n, children=tuple(children.get(n.index, ()))) for n in nodes)
    )
    logger.info(
        "Resolution tree built",
        policy=policy.name,
        nodes=len(tree.nodes),
        leaves=len(tree.leaves),
    )
    return tree


def geodesics(tree: ResolutionTree) -> list[Geodesic]:
    """One geodesic per leaf, in leaf creation order."""
    found: list[Geodesic] = []
    for leaf in tree.leaves:
        moves = tuple(n.move for n in tree.path_to(leaf.index) if n.move is not None)
        found.append(
            Geodesic(
                moves=moves,
                b=sum(m.kind is MoveKind.BUBBLE for m in moves),
                c=sum(m.kind is MoveKind.CIRCLE for m in moves),
                leaf=leaf.index,
            )
        )
    return found


def state_sum(tree: ResolutionTree) -> LaurentPoly:
    return total(geodesic_contribution(g) for g in geodesics(tree))


def spider_eval(web: Web, policy: MovePolicy | None = None) -> LaurentPoly:
    """Quantum sl3 evaluation of a closed web."""
    return state_sum(build_tree(web, policy))


# --- Traces ---


def algebra_trace(
    geodesic: Geodesic, classes: Mapping[int, SquareClass] | None = None
) -> AlgebraTrace:
    """Walk a geodesic from its leaf back to the root.

    ``classes`` maps the index of a square move within ``geodesic.moves`` to
    the component class observed at that square; absent squares stay unclassified.
    """
    classes = classes or {}
    steps = [TraceStep(TraceStepKind.LEAF_INIT, circles=geodesic.c)]
    for index in range(len(geodesic.moves) - 1, -1, -1):
        move = geodesic.moves[index]
        if move.kind is MoveKind.BUBBLE:
            steps.append(TraceStep(TraceStepKind.BUBBLE_ADJOIN, face=move.face))
        elif move.kind is MoveKind.SQUARE:
            observed = classes.get(index, SquareClass.UNCLASSIFIED)
            if observed.is_big:
                kind = TraceStepKind.SQUARE_BIG
            elif observed is SquareClass.SMALL:
                kind = TraceStepKind.SQUARE_SMALL
            else:
                kind = TraceStepKind.SQUARE_UNCLASSIFIED
            steps.append(TraceStep(kind, face=move.face))
    return AlgebraTrace(tuple(steps))


# --- Export ---


def _node_label(node: ResolutionNode) -> str:
    return f"v={node.web.vertex_count} e={len(node.web.edges)} loops={node.web.free_loops}"


def tree_to_dot(tree: ResolutionTree) -> str:
    lines = ["digraph resolution {", "  node [shape=box];"]
    for node in tree.nodes:
        lines.append(f'  n{node.index} [label="{_node_label(node)}"];')
    for node in tree.nodes:
        if node.parent is not None and node.move is not None:
            lines.append(f'  n{node.parent} -> n{node.index} [label="{node.move.label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def check_policy_invariance(web: Web, trials: int | None = None, seed: int = 0) -> bool:
    """Default-policy evaluation agrees with ``trials`` seeded random policies."""
    trials = settings.resolve.random_policy_trials if trials is None else trials
    expected = spider_eval(web)
    for offset in range(trials):
        if spider_eval(web, RandomPolicy(seed + offset)) != expected:
            logger.warning("Policy disagreement", seed=seed + offset, expected=str(expected))
            return False
    return True
