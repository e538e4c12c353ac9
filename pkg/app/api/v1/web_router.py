"""Web analysis API router."""

from typing import Annotated

from fastapi import APIRouter, Depends

from app.core.workers import run_blocking
from app.dependencies import get_analysis_service
from app.schemas.report_schema import (
    ColoringReport,
    ColorRequest,
    ExampleSummary,
    FacesReport,
    FacesRequest,
    NumericReport,
    NumericRequest,
    SpiderReport,
    SpiderRequest,
    ValidationReport,
    WebRequest,
)
from app.schemas.response_schema import ApiResponse, success_response
from app.schemas.web_schema import WebPayload
from app.services.analysis_service import AnalysisService
from app.services.corpus import example

router = APIRouter(prefix="/api/v1", tags=["webs"])

AnalysisServiceDep = Annotated[AnalysisService, Depends(get_analysis_service)]


@router.get("/examples", response_model=ApiResponse[list[ExampleSummary]])
async def list_examples(service: AnalysisServiceDep) -> dict:
    """List the built-in example webs."""
    return success_response(service.examples())


@router.get("/examples/{name}", response_model=ApiResponse[WebPayload])
async def get_example(name: str) -> dict:
    """Return one example as a web-v1 document."""
    return success_response(WebPayload.from_web(example(name)))


@router.post("/webs/validate", response_model=ApiResponse[ValidationReport])
async def validate_web(request: WebRequest, service: AnalysisServiceDep) -> dict:
    """Check every structural invariant of a web."""
    return success_response(service.validate(request.web.to_web()))


@router.post("/webs/faces", response_model=ApiResponse[FacesReport])
async def list_faces(request: FacesRequest, service: AnalysisServiceDep) -> dict:
    """Enumerate faces, optionally with the Euler audit."""
    return success_response(service.faces(request.web.to_web(), euler=request.euler))


@router.post("/webs/color", response_model=ApiResponse[ColoringReport])
async def color_web(request: ColorRequest, service: AnalysisServiceDep) -> dict:
    """Natural Z/3 coloring and, on request, the number of proper colorings."""
    result = await run_blocking(
        service.color, request.web.to_web(), request.base_face, request.count
    )
    return success_response(result)


@router.post("/webs/spider", response_model=ApiResponse[SpiderReport])
async def evaluate_spider(request: SpiderRequest, service: AnalysisServiceDep) -> dict:
    """Spider polynomial of a closed web."""
    result = await run_blocking(
        service.spider,
        request.web.to_web(),
        policy=request.policy,
        seed=request.seed,
        with_geodesics=request.geodesics,
        with_tree=request.tree,
    )
    return success_response(result)


@router.post("/webs/numeric", response_model=ApiResponse[NumericReport])
async def sample_representations(
    request: NumericRequest, service: AnalysisServiceDep
) -> dict:
    """Sample SU(3) representations and measure them."""
    result = await run_blocking(
        service.numeric,
        request.web.to_web(),
        seeds=request.seeds,
        pins=request.pins,
        dimension=request.dimension,
        census=request.census,
    )
    return success_response(result)
