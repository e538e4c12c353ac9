"""Tests for skein surgery."""

import pytest

from app.core.exceptions import (
    NoFreeLoopError,
    NotABubbleError,
    NotASquareError,
    NotDanglingError,
)
from app.models.resolution import Parity
from app.models.web import Face, Web
from app.services import corpus
from app.services.skein import (
    bubble_surgery,
    glue_boundary_pairs,
    is_separating_square,
    remove_circle,
    smash_bubble,
    smooth_square,
    splice,
    square_surgery,
)
from app.services.topology import faces, interior_faces, validate


def first_face(web: Web, size: int) -> Face:
    return next(f for f in interior_faces(web) if f.size == size)


class TestRemoveCircle:
    """Free loop removal."""

    def test_removes_one_loop(self) -> None:
        assert remove_circle(corpus.two_circles()) == corpus.circle()

    def test_requires_a_loop(self, theta: Web) -> None:
        with pytest.raises(NoFreeLoopError):
            remove_circle(theta)


class TestBubble:
    """Bubble smashing."""

    def test_theta_becomes_circle(self, theta: Web) -> None:
        assert smash_bubble(theta, faces(theta)[0]) == corpus.circle()

    def test_bubble_becomes_strand(self, bubble_web: Web) -> None:
        assert smash_bubble(bubble_web, first_face(bubble_web, 2)) == corpus.strand()

    def test_theta_surgery_maps_third_edge_to_loop(self, theta: Web) -> None:
        face = faces(theta)[0]
        sides = {d.edge_id for d in face.darts}
        (survivor,) = {0, 1, 2} - sides
        surgery = bubble_surgery(theta, face)
        assert surgery.loop_map == {survivor: 0}
        assert surgery.edge_map == {}

    def test_result_is_valid(self) -> None:
        web = corpus.square_closed()
        child = smash_bubble(web, first_face(web, 2))
        assert validate(child) == []
        assert child.vertex_count == 2

    def test_rejects_square(self, cube: Web) -> None:
        with pytest.raises(NotABubbleError):
            smash_bubble(cube, faces(cube)[0])


class TestSquare:
    """Square smoothing."""

    def test_cube_smoothing_counts(self, cube: Web) -> None:
        face = faces(cube)[0]
        for keep in Parity:
            child = smooth_square(cube, face, keep)
            assert child.vertex_count == 4
            assert len(child.edges) == len(cube.edges) - 6
            assert child.free_loops == 0
            assert validate(child) == []

    def test_square_closed_smoothings(self) -> None:
        web = corpus.square_closed()
        face = first_face(web, 4)
        children = [smooth_square(web, face, keep) for keep in Parity]
        assert all(child.vertex_count == 0 for child in children)
        assert sorted(child.free_loops for child in children) == [1, 2]

    def test_bounded_square_keeps_boundary(self, square_web: Web) -> None:
        face = first_face(square_web, 4)
        for keep in Parity:
            child = smooth_square(square_web, face, keep)
            assert validate(child) == []
            assert len(child.boundary) == 4
            assert child.vertex_count == 0

    def test_surgery_maps_externals_to_arcs(self, square_web: Web) -> None:
        surgery = square_surgery(square_web, first_face(square_web, 4), Parity.EVEN)
        assert set(surgery.edge_map) == {4, 5, 6, 7}
        assert len(set(surgery.edge_map.values())) == 2

    def test_rejects_bubble(self, theta: Web) -> None:
        with pytest.raises(NotASquareError):
            smooth_square(theta, faces(theta)[0], Parity.EVEN)

    def test_separating(self, cube: Web) -> None:
        web = corpus.square_closed()
        assert is_separating_square(web, first_face(web, 4))
        assert not is_separating_square(cube, faces(cube)[0])


class TestSplice:
    """Joining boundary stubs."""

    def test_splice_closes_bubble(self) -> None:
        closed = splice(corpus.bubble(), incoming=3, outgoing=0)
        assert closed.is_closed
        assert validate(closed) == []

    def test_self_splice_makes_loop(self) -> None:
        assert splice(corpus.strand(), incoming=0, outgoing=0) == corpus.circle()

    def test_requires_dangling_ends(self, theta: Web) -> None:
        with pytest.raises(NotDanglingError):
            splice(theta, incoming=0, outgoing=1)

    def test_glue_pairs(self) -> None:
        closed = glue_boundary_pairs(corpus.double_square(), [(7, 8), (10, 9)])
        assert closed == corpus.double_square_closed()
        assert validate(closed) == []
