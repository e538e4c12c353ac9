"""Tests for AnalysisService."""

import pytest

from app.core.exceptions import FaceNotFoundError, InvalidWebError, PinFormatError
from app.core.settings import NumericConfig, ResolveConfig
from app.models.web import Web
from app.services import corpus
from app.services.analysis_service import AnalysisService


@pytest.fixture
def service(numeric_config: NumericConfig, resolve_config: ResolveConfig) -> AnalysisService:
    return AnalysisService(numeric=numeric_config, resolve=resolve_config)


@pytest.fixture
def broken_web() -> Web:
    return Web.build(
        [(0, "source", ["0t", "1t"]), (1, "sink", ["1h", "0h"])],
        [(0, 0, 1), (1, 0, 1)],
    )


class TestValidate:
    """Validation reports."""

    def test_valid_bounded_web(self, service: AnalysisService, square_web: Web) -> None:
        report = service.validate(square_web)
        assert report.valid
        assert (report.vertices, report.edges, report.closed) == (4, 8, False)
        assert report.boundary_signs == ["+", "-", "+", "-"]
        assert report.components == 1

    def test_invalid_web(self, service: AnalysisService, broken_web: Web) -> None:
        report = service.validate(broken_web)
        assert not report.valid
        assert report.components is None
        assert {v.code for v in report.violations} == {"ROTATION_ARITY"}
        assert report.violations[0].element == "vertex"

    def test_other_operations_refuse_invalid_webs(
        self, service: AnalysisService, broken_web: Web
    ) -> None:
        with pytest.raises(InvalidWebError) as exc_info:
            service.spider(broken_web)
        assert exc_info.value.status_code == 422
        assert len(exc_info.value.violations) == 2


class TestFacesAndColor:
    """Face listing and colorings."""

    def test_faces_with_euler(self, service: AnalysisService, cube: Web) -> None:
        report = service.faces(cube, euler=True)
        assert [f.size for f in report.faces] == [4] * 6
        assert report.euler_characteristic == 2
        assert report.euler_audit == "2"
        assert report.faces[0].anchor == "0:left"
        assert len(report.faces[0].boundary) == 4

    def test_bounded_faces_are_interior(self, service: AnalysisService, square_web: Web) -> None:
        report = service.faces(square_web, euler=True)
        assert [f.size for f in report.faces] == [4]
        assert report.euler_characteristic is None

    def test_color(self, service: AnalysisService, theta: Web) -> None:
        report = service.color(theta, count=True)
        assert report.proper
        assert report.count == 6
        assert sorted(report.colors.values()) == [0, 1, 2]

    def test_color_unknown_base_face(self, service: AnalysisService, theta: Web) -> None:
        with pytest.raises(FaceNotFoundError):
            service.color(theta, base_face="5:left")


class TestSpider:
    """Spider reports."""

    def test_cube(self, service: AnalysisService, cube: Web) -> None:
        report = service.spider(cube, with_geodesics=True, with_tree=True)
        assert report.polynomial == "2*q^-4 + 6*q^-2 + 8 + 6*q^2 + 2*q^4"
        assert report.value_at_one == 24
        assert report.policy == "default"
        assert report.geodesics is not None and len(report.geodesics) == report.leaves == 2
        assert report.geodesics[0].contribution == "q^-4 + 3*q^-2 + 4 + 3*q^2 + q^4"
        assert report.geodesics[0].moves[0].move == "square"
        assert report.tree is not None and len(report.tree.nodes) == report.nodes
        assert report.tree.nodes[0].parent is None

    def test_random_policy(self, service: AnalysisService, theta: Web) -> None:
        report = service.spider(theta, policy="random", seed=4)
        assert report.policy == "random:4"
        assert report.polynomial == "q^-3 + 2*q^-1 + 2*q + q^3"
        assert report.geodesics is None and report.tree is None


class TestNumeric:
    """Numeric reports."""

    def test_samples(self, service: AnalysisService, square_web: Web) -> None:
        report = service.numeric(square_web, seeds=[0, 1], dimension=True)
        assert [s.seed for s in report.samples] == [0, 1]
        for sample in report.samples:
            assert sample.residual < 1e-9
            assert sample.est_dim == 8
            assert set(sample.classes.values()) <= {"big-even", "big-odd"}
            assert len(sample.lines) == 8
        assert report.census is None

    def test_census_with_pins(self, service: AnalysisService, cube: Web) -> None:
        pins = [f"{edge}=0,0,1" for edge in (8, 9, 10, 11)]
        report = service.numeric(cube, seeds=[0], pins=pins, census=32)
        assert list(report.samples[0].classes.values()).count("small") == 2
        assert report.census is not None
        assert report.census.samples == 33
        assert sum(entry.count for entry in report.census.entries) == 33
        assert len(report.census.entries) == 3
        assert all(entry.classes.count("small") == 2 for entry in report.census.entries)
        counts = [entry.count for entry in report.census.entries]
        assert counts == sorted(counts, reverse=True)

    def test_bad_pin(self, service: AnalysisService, theta: Web) -> None:
        with pytest.raises(PinFormatError):
            service.numeric(theta, pins=["0=1,0"])


class TestExamples:
    """Example summaries."""

    def test_summaries(self) -> None:
        summaries = AnalysisService.examples()
        assert [s.name for s in summaries] == list(corpus.EXAMPLE_NAMES)
        cube = next(s for s in summaries if s.name == "cube")
        assert (cube.vertices, cube.edges, cube.closed) == (8, 12, True)
