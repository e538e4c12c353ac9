"""Tests for resolution trees and spider evaluation."""

import random

import pytest

from app.core.exceptions import BoundedWebError, NoReducibleFaceError, PolicyFormatError
from app.models.laurent import LaurentPoly, eval_at_one, parse, quantum_int
from app.models.representation import SquareClass
from app.models.resolution import MoveKind, geodesic_contribution
from app.models.web import Web
from app.services import corpus
from app.services.coloring import count_edge_colorings
from app.services.resolver import (
    DefaultPolicy,
    RandomPolicy,
    algebra_trace,
    build_tree,
    check_policy_invariance,
    geodesics,
    parse_policy,
    replay,
    spider_eval,
    state_sum,
    tree_to_dot,
)
from app.services.topology import disjoint_union, is_connected

Q2 = quantum_int(2)
Q3 = quantum_int(3)


def torus_theta() -> Web:
    return Web.build(
        [(0, "source", ["0t", "1t", "2t"]), (1, "sink", ["0h", "1h", "2h"])],
        [(0, 0, 1), (1, 0, 1), (2, 0, 1)],
    )


class TestSpiderGoldens:
    """Known evaluations."""

    @pytest.mark.parametrize(
        ("name", "expected"),
        [
            ("circle", Q3),
            ("two-circles", Q3 * Q3),
            ("theta", Q2 * Q3),
            ("bubble-closed", Q2 * Q3),
            ("square-closed", Q3 * Q3 + Q3),
            ("cube", parse("2") * Q2**2 * Q3),
            ("double-hexagon", Q2**4 * Q3 + parse("2") * Q2**2 * Q3),
        ],
    )
    def test_golden(self, name: str, expected: LaurentPoly) -> None:
        assert spider_eval(corpus.example(name)) == expected

    def test_cube_expansion(self, cube: Web) -> None:
        result = spider_eval(cube)
        assert result == parse("2*q^-4 + 6*q^-2 + 8 + 6*q^2 + 2*q^4")
        assert eval_at_one(result) == 24

    def test_empty_web_is_one(self) -> None:
        assert spider_eval(Web()) == parse("1")

    @pytest.mark.parametrize("name", sorted(corpus.closed_examples()))
    def test_palindromic_with_positive_coefficients(self, name: str) -> None:
        result = spider_eval(corpus.example(name))
        assert result.is_palindromic()
        assert all(c > 0 for _, c in result.terms)

    @pytest.mark.parametrize("name", sorted(corpus.closed_examples()))
    def test_value_at_one_counts_colorings(self, name: str) -> None:
        web = corpus.example(name)
        assert eval_at_one(spider_eval(web)) == count_edge_colorings(web)

    def test_multiplicative_over_union(self, theta: Web, cube: Web) -> None:
        union = disjoint_union(theta, cube)
        assert spider_eval(union) == spider_eval(theta) * spider_eval(cube)

    def test_bounded_web_rejected(self, square_web: Web) -> None:
        with pytest.raises(BoundedWebError):
            spider_eval(square_web)

    def test_stuck_state_is_internal_error(self) -> None:
        with pytest.raises(NoReducibleFaceError) as exc_info:
            spider_eval(torus_theta())
        assert exc_info.value.exit_code == 2


class TestPolicies:
    """Move policies and their agreement."""

    def test_parse(self) -> None:
        assert isinstance(parse_policy("default"), DefaultPolicy)
        assert parse_policy("random:5").name == "random:5"
        assert parse_policy("random", seed=9).name == "random:9"
        assert parse_policy("random:-3").name == "random:-3"

    @pytest.mark.parametrize("spec", ["", "greedy", "random:", "random:x", "random:1:2"])
    def test_parse_rejects(self, spec: str) -> None:
        with pytest.raises(PolicyFormatError):
            parse_policy(spec)

    @pytest.mark.parametrize("name", sorted(corpus.closed_examples()))
    def test_invariance_on_examples(self, name: str) -> None:
        assert check_policy_invariance(corpus.example(name), trials=100)

    def test_invariance_on_random_webs(self) -> None:
        rng = random.Random(2024)
        for index in range(50):
            web = corpus.random_web(rng, max_vertices=14)
            assert check_policy_invariance(web, trials=100, seed=1000 * index)

    def test_random_policy_tree_differs_but_agrees(self, cube: Web) -> None:
        union = disjoint_union(cube, Web(free_loops=1))
        reference = spider_eval(union)
        for seed in range(5):
            assert spider_eval(union, RandomPolicy(seed)) == reference


class TestTrees:
    """Tree shape, geodesics and traces."""

    def test_circle_tree(self) -> None:
        tree = build_tree(corpus.circle())
        assert len(tree.nodes) == 2
        assert tree.root.children == (1,)
        assert tree.nodes[1].is_leaf

    def test_leaves_are_empty(self, cube: Web) -> None:
        tree = build_tree(cube)
        assert all(leaf.is_leaf for leaf in tree.leaves)
        assert len(tree.leaves) == 2

    def test_cube_geodesics(self, cube: Web) -> None:
        found = geodesics(build_tree(cube))
        assert [(g.b, g.c) for g in found] == [(2, 1), (2, 1)]
        assert found[0].moves[0].kind is MoveKind.SQUARE
        assert found[0].moves[0].keep != found[1].moves[0].keep

    def test_state_sum_is_sum_of_contributions(self) -> None:
        tree = build_tree(corpus.double_hexagon())
        contributions = [geodesic_contribution(g) for g in geodesics(tree)]
        total = contributions[0]
        for poly in contributions[1:]:
            total = total + poly
        assert state_sum(tree) == total

    def test_replay_reaches_empty_web(self, cube: Web) -> None:
        for geodesic in geodesics(build_tree(cube)):
            states = replay(cube, geodesic.moves)
            assert len(states) == len(geodesic.moves) + 1
            assert states[-1].is_empty
            assert all(is_connected(s) for s in states[:-2])

    def test_algebra_trace(self, cube: Web) -> None:
        geodesic = geodesics(build_tree(cube))[0]
        trace = algebra_trace(geodesic)
        assert trace.labels == [
            "leaf-init(1)",
            "bubble-adjoin-gamma",
            "bubble-adjoin-gamma",
            "square-pullback-unclassified",
        ]
        assert trace.implied_polynomial() == geodesic_contribution(geodesic)

    def test_algebra_trace_with_classes(self, cube: Web) -> None:
        geodesic = geodesics(build_tree(cube))[0]
        big = algebra_trace(geodesic, {0: SquareClass.BIG_ODD})
        small = algebra_trace(geodesic, {0: SquareClass.SMALL})
        assert big.labels[-1] == "square-pullback-big"
        assert small.labels[-1] == "square-pullback-small"

    def test_dot_export(self, theta: Web) -> None:
        tree = build_tree(theta)
        dot = tree_to_dot(tree)
        assert dot.startswith("digraph resolution {")
        assert dot.rstrip().endswith("}")
        assert dot.count("->") == len(tree.nodes) - 1
        assert 'label="circle"' in dot
