"""Report building shared by the command line and the HTTP API."""

from collections.abc import Sequence
from dataclasses import replace

import structlog

from app.core.exceptions import InvalidWebError
from app.core.settings import NumericConfig, ResolveConfig
from app.models.laurent import eval_at_one, render
from app.models.resolution import Geodesic, MoveRecord, ResolutionTree
from app.models.web import Face, Web
from app.schemas.report_schema import (
    CensusEntry,
    CensusReport,
    ColoringReport,
    ExampleSummary,
    FaceReport,
    FacesReport,
    GeodesicReport,
    MoveReport,
    NumericReport,
    SampleReport,
    SpiderReport,
    TreeNodeReport,
    TreeReport,
    ValidationReport,
    ViolationReport,
)
from app.schemas.web_schema import WebPayload
from app.services import resolver, su3
from app.services.coloring import count_edge_colorings, is_proper, natural_coloring
from app.services.corpus import EXAMPLE_NAMES, example
from app.services.topology import (
    boundary_signs,
    component_count,
    euler_audit,
    euler_characteristic,
    face_by_anchor,
    faces,
    interior_faces,
    is_connected,
    validate,
)

logger = structlog.get_logger()


def _move_report(move: MoveRecord) -> MoveReport:
    return MoveReport(
        move=move.kind.value,
        face=move.face,
        keep=None if move.keep is None else move.keep.value,
    )


def _face_report(face: Face) -> FaceReport:
    return FaceReport(
        anchor=face.anchor_token,
        size=face.size,
        boundary=[f"{edge_id}:{side.value}" for edge_id, side in face.boundary],
    )


def tree_report(tree: ResolutionTree) -> TreeReport:
    """JSON form of a resolution tree, every node carrying its web-v1 state."""
    return TreeReport(
        nodes=[
            TreeNodeReport(
                index=node.index,
                parent=node.parent,
                move=None if node.move is None else _move_report(node.move),
                children=list(node.children),
                web=WebPayload.from_web(node.web),
            )
            for node in tree.nodes
        ],
        dot=resolver.tree_to_dot(tree),
    )


class AnalysisService:
    """Runs one analysis on an already parsed web and packages the result."""

    def __init__(self, numeric: NumericConfig, resolve: ResolveConfig) -> None:
        self._numeric = numeric
        self._resolve = resolve

    def require_valid(self, web: Web) -> None:
        violations = validate(web)
        if violations:
            raise InvalidWebError(violations)

    def validate(self, web: Web) -> ValidationReport:
        violations = validate(web)
        return ValidationReport(
            valid=not violations,
            vertices=web.vertex_count,
            edges=len(web.edges),
            free_loops=web.free_loops,
            closed=web.is_closed,
            components=None if violations else component_count(web),
            boundary_signs=(
                [s.value for s in boundary_signs(web)] if web.boundary and not violations else None
            ),
            violations=[
                ViolationReport(code=v.code, element=v.element, id=v.element_id, message=v.message)
                for v in violations
            ],
        )

    def faces(self, web: Web, euler: bool = False) -> FacesReport:
        self.require_valid(web)
        found = faces(web) if web.is_closed else interior_faces(web)
        report = FacesReport(faces=[_face_report(f) for f in found])
        if euler and web.is_closed:
            audit = str(euler_audit(web)) if is_connected(web) and not web.free_loops else None
            report = report.model_copy(
                update={"euler_characteristic": euler_characteristic(web), "euler_audit": audit}
            )
        return report

    def color(self, web: Web, base_face: str | None = None, count: bool = False) -> ColoringReport:
        self.require_valid(web)
        base = face_by_anchor(web, base_face) if base_face is not None else None
        coloring = natural_coloring(web, base)
        return ColoringReport(
            colors={str(e): c for e, c in sorted(coloring.colors.items())},
            face_labels={f"{e}:{s.value}": label for (e, s), label in coloring.face_labels.items()},
            proper=is_proper(web, coloring),
            count=count_edge_colorings(web, self._resolve) if count else None,
        )

    def spider(
        self,
        web: Web,
        policy: str = "default",
        seed: int | None = None,
        with_geodesics: bool = False,
        with_tree: bool = False,
    ) -> SpiderReport:
        self.require_valid(web)
        chosen = resolver.parse_policy(policy, self._resolve.default_seed if seed is None else seed)
        tree = resolver.build_tree(web, chosen)
        polynomial = resolver.state_sum(tree)
        return SpiderReport(
            polynomial=render(polynomial),
            value_at_one=eval_at_one(polynomial),
            policy=chosen.name,
            nodes=len(tree.nodes),
            leaves=len(tree.leaves),
            geodesics=(
                [self._geodesic_report(g) for g in resolver.geodesics(tree)]
                if with_geodesics
                else None
            ),
            tree=tree_report(tree) if with_tree else None,
        )

    def _geodesic_report(self, geodesic: Geodesic) -> GeodesicReport:
        trace = resolver.algebra_trace(geodesic)
        return GeodesicReport(
            moves=[_move_report(m) for m in geodesic.moves],
            b=geodesic.b,
            c=geodesic.c,
            contribution=render(resolver.geodesic_contribution(geodesic)),
            trace=trace.labels,
        )

    def numeric(
        self,
        web: Web,
        seeds: Sequence[int] = (0,),
        pins: Sequence[str] = (),
        dimension: bool = False,
        census: int = 0,
    ) -> NumericReport:
        self.require_valid(web)
        pinned = dict(su3.parse_pin(spec) for spec in pins)
        squares = [f for f in interior_faces(web) if f.size == 4]
        samples: list[SampleReport] = []
        for seed in seeds:
            point = su3.find_representation(web, seed, pinned, self._numeric)
            report = replace(
                su3.check_representation(web, point, self._numeric),
                classes={
                    f.anchor_token: su3.classify_square(web, f, point, self._numeric)
                    for f in squares
                },
            )
            if dimension:
                estimate = su3.local_dimension(web, point, self._numeric)
                report = replace(report, est_dim=estimate.est_dim, rank_gap=estimate.rank_gap)
            samples.append(
                SampleReport(
                    seed=seed,
                    residual=report.residual,
                    relator_residual=report.relator_residual,
                    est_dim=report.est_dim,
                    rank_gap=report.rank_gap,
                    classes={anchor: c.value for anchor, c in report.classes.items()},
                    lines={str(e): line.as_list() for e, line in sorted(point.lines.items())},
                )
            )
        census_report = None
        if census:
            result = su3.component_census(
                web,
                squares,
                samples=census,
                seed=seeds[0],
                witnesses=[pinned] if pinned else (),
                config=self._numeric,
            )
            census_report = CensusReport(
                squares=list(result.squares),
                samples=result.samples,
                entries=[
                    CensusEntry(
                        classes=[c.value for c in classes],
                        count=count,
                        witness_seed=result.witnesses[classes],
                    )
                    for classes, count in sorted(
                        result.histogram.items(), key=lambda item: (-item[1], item[0])
                    )
                ],
            )
        logger.info("Numeric analysis finished", samples=len(samples), census=census)
        return NumericReport(samples=samples, census=census_report)

    @staticmethod
    def examples() -> list[ExampleSummary]:
        summaries = []
        for name in EXAMPLE_NAMES:
            web = example(name)
            summaries.append(
                ExampleSummary(
                    name=name,
                    vertices=web.vertex_count,
                    edges=len(web.edges),
                    free_loops=web.free_loops,
                    closed=web.is_closed,
                )
            )
        return summaries
