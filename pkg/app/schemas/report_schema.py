"""Request and report schemas for the analysis commands."""

from pydantic import BaseModel, ConfigDict, Field

from app.schemas.web_schema import WebPayload


# --- Requests ---


class WebRequest(BaseModel):
    """A web-v1 document to analyse."""

    model_config = ConfigDict(extra="forbid")

    web: WebPayload


class FacesRequest(WebRequest):
    euler: bool = False


class ColorRequest(WebRequest):
    base_face: str | None = Field(default=None, description="Face anchor such as 0:left")
    count: bool = False


class SpiderRequest(WebRequest):
    policy: str = Field(default="default", description="default, random or random:<seed>")
    seed: int | None = None
    geodesics: bool = False
    tree: bool = False


class NumericRequest(WebRequest):
    seeds: list[int] = Field(default_factory=lambda: [0], min_length=1, max_length=64)
    pins: list[str] = Field(default_factory=list, description="<edge>=<a>,<b>,<c>")
    dimension: bool = False
    census: int = Field(default=0, ge=0, le=512)


# --- Reports ---


class ViolationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    code: str
    element: str
    id: int | None
    message: str


class ValidationReport(BaseModel):
    """Structural summary of a web and every broken invariant."""

    model_config = ConfigDict(frozen=True)

    valid: bool
    vertices: int
    edges: int
    free_loops: int
    closed: bool
    components: int | None = None
    boundary_signs: list[str] | None = None
    violations: list[ViolationReport] = Field(default_factory=list)


class FaceReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    anchor: str
    size: int
    boundary: list[str]


class FacesReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    faces: list[FaceReport]
    euler_characteristic: int | None = None
    euler_audit: str | None = None


class ColoringReport(BaseModel):
    """Edge colors in Z/3 keyed by edge id, plus the face labels behind them."""

    model_config = ConfigDict(frozen=True)

    colors: dict[str, int]
    face_labels: dict[str, int]
    proper: bool
    count: int | None = None


class MoveReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    move: str
    face: str | None = None
    keep: str | None = None


class GeodesicReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    moves: list[MoveReport]
    b: int
    c: int
    contribution: str
    trace: list[str]


class TreeNodeReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    index: int
    parent: int | None
    move: MoveReport | None
    children: list[int]
    web: WebPayload


class TreeReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    nodes: list[TreeNodeReport]
    dot: str


class SpiderReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    polynomial: str
    value_at_one: int
    policy: str
    nodes: int
    leaves: int
    geodesics: list[GeodesicReport] | None = None
    tree: TreeReport | None = None


class SampleReport(BaseModel):
    """One sampled representation and the measurements taken at it."""

    model_config = ConfigDict(frozen=True)

    seed: int
    residual: float
    relator_residual: float
    est_dim: int | None = None
    rank_gap: float | None = None
    classes: dict[str, str] = Field(default_factory=dict)
    lines: dict[str, list[list[float]]] = Field(default_factory=dict)


class CensusEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    classes: list[str]
    count: int
    witness_seed: int | None


class CensusReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    squares: list[str]
    samples: int
    entries: list[CensusEntry]


class NumericReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    samples: list[SampleReport]
    census: CensusReport | None = None


class ExampleSummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    vertices: int
    edges: int
    free_loops: int
    closed: bool
