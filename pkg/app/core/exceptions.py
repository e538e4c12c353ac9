"""Application exception classes and handlers."""

from collections.abc import Sequence
from typing import TYPE_CHECKING

from fastapi import Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from app.schemas.response_schema import ErrorResponse

if TYPE_CHECKING:
    from app.models.web import Violation


class AppException(Exception):
    """Base application exception."""

    def __init__(self, message: str, code: str, status_code: int = 400) -> None:
        self.message = message
        self.code = code
        self.status_code = status_code
        super().__init__(message)

    @property
    def exit_code(self) -> int:
        """CLI exit status: 2 for internal consistency failures, 1 for bad input."""
        return 2 if self.status_code >= 500 else 1

    @property
    def details(self) -> list[str]:
        return []


# --- Web format and validity (422) ---


class WebFormatError(AppException):
    """Input does not parse as a web-v1 document."""

    def __init__(self, detail: str) -> None:
        super().__init__(
            message=f"Malformed web-v1 document: {detail}",
            code="WEB_FORMAT_ERROR",
            status_code=422,
        )


class InvalidWebError(AppException):
    """Web fails structural validation."""

    def __init__(self, violations: Sequence["Violation"]) -> None:
        self.violations = list(violations)
        super().__init__(
            message=f"Web has {len(self.violations)} violation(s)",
            code="INVALID_WEB",
            status_code=422,
        )

    @property
    def details(self) -> list[str]:
        return [f"{v.code} {v.element} {v.element_id}: {v.message}" for v in self.violations]


class BoundedWebError(AppException):
    """Operation needs a closed web but the web has dangling edges."""

    def __init__(self, operation: str) -> None:
        super().__init__(
            message=f"{operation} requires a closed web",
            code="BOUNDED_WEB",
            status_code=422,
        )


class DisconnectedWebError(AppException):
    """Operation needs a connected web."""

    def __init__(self, operation: str) -> None:
        super().__init__(
            message=f"{operation} requires a connected web with at least one vertex",
            code="DISCONNECTED_WEB",
            status_code=422,
        )


class BoundaryShapeError(AppException):
    """Boundary signs do not have the shape an operation needs."""

    def __init__(self, expected: str, actual: str) -> None:
        super().__init__(
            message=f"Boundary signs {actual} do not match {expected}",
            code="BOUNDARY_SHAPE",
            status_code=422,
        )


# --- Surgery (400) ---


class NotABubbleError(AppException):
    """Face handed to a bubble smash is not a bubble."""

    def __init__(self, size: int) -> None:
        super().__init__(
            message=f"Face of size {size} is not a bubble",
            code="NOT_A_BUBBLE",
        )


class NotASquareError(AppException):
    """Face handed to a square smoothing is not a square."""

    def __init__(self, size: int) -> None:
        super().__init__(
            message=f"Face of size {size} is not a square",
            code="NOT_A_SQUARE",
        )


class NoFreeLoopError(AppException):
    """Circle removal on a web without free loops."""

    def __init__(self) -> None:
        super().__init__(
            message="Web has no free loop to remove",
            code="NO_FREE_LOOP",
        )


class NotDanglingError(AppException):
    """Splice endpoint is not a dangling half-edge."""

    def __init__(self, token: str) -> None:
        super().__init__(
            message=f"Half-edge {token} is not dangling",
            code="NOT_DANGLING",
        )


# --- Polynomials (400) ---


class InvalidQuantumIntegerError(AppException):
    """Quantum integer index out of range."""

    def __init__(self, n: int) -> None:
        super().__init__(
            message=f"Quantum integer [n] needs n >= 1, got {n}",
            code="INVALID_QUANTUM_INTEGER",
        )


class OddDegreeError(AppException):
    """Dimension profile contains an odd degree."""

    def __init__(self, degree: int) -> None:
        super().__init__(
            message=f"Degree {degree} is odd; only even cohomology is supported",
            code="ODD_DEGREE",
        )


class EmptyDimensionProfileError(AppException):
    """Dimension profile has no nonzero entry."""

    def __init__(self) -> None:
        super().__init__(
            message="Dimension profile has no nonzero dimension",
            code="EMPTY_DIMENSION_PROFILE",
        )


class LaurentFormatError(AppException):
    """Polynomial text does not parse."""

    def __init__(self, text: str) -> None:
        super().__init__(
            message=f"Cannot parse Laurent polynomial term {text!r}",
            code="LAURENT_FORMAT",
        )


# --- Options (400) ---


class ColoringLimitError(AppException):
    """Brute-force coloring count refused for a large web."""

    def __init__(self, edges: int, limit: int) -> None:
        super().__init__(
            message=f"Web has {edges} edges; coloring count is limited to {limit}",
            code="COLORING_LIMIT",
        )


class PolicyFormatError(AppException):
    """Unknown move policy specifier."""

    def __init__(self, spec: str) -> None:
        super().__init__(
            message=f"Unknown policy {spec!r}; use 'default' or 'random:<seed>'",
            code="POLICY_FORMAT",
        )


class PinFormatError(AppException):
    """Pinned line specifier does not parse or names an unknown edge."""

    def __init__(self, spec: str) -> None:
        super().__init__(
            message=f"Cannot use pin {spec!r}; expected edge=a,b,c with a known edge",
            code="PIN_FORMAT",
        )


class InvalidRepresentationError(AppException):
    """Point fails the vertex orthogonality check."""

    def __init__(self, residual: float) -> None:
        super().__init__(
            message=f"Point is not a representation (residual {residual:.3e})",
            code="INVALID_REPRESENTATION",
        )


# --- Not Found (404) ---


class ExampleNotFoundError(AppException):
    """No built-in web with this name."""

    def __init__(self, name: str) -> None:
        super().__init__(
            message=f"Unknown example web {name!r}",
            code="EXAMPLE_NOT_FOUND",
            status_code=404,
        )


class FaceNotFoundError(AppException):
    """No face with this anchor."""

    def __init__(self, anchor: str) -> None:
        super().__init__(
            message=f"No face anchored at {anchor}",
            code="FACE_NOT_FOUND",
            status_code=404,
        )


# --- Internal consistency (500) ---


class NoReducibleFaceError(AppException):
    """Connected state with vertices but no bubble or square."""

    def __init__(self, vertices: int) -> None:
        super().__init__(
            message=f"State with {vertices} vertices has no bubble or square",
            code="NO_REDUCIBLE_FACE",
            status_code=500,
        )


class InconsistentLabelingError(AppException):
    """Face label propagation disagrees with itself."""

    def __init__(self, edge_id: int) -> None:
        super().__init__(
            message=f"Face labels disagree across edge {edge_id}",
            code="INCONSISTENT_LABELING",
            status_code=500,
        )


class RepresentationNotFoundError(AppException):
    """Restart budget exhausted without a representation."""

    def __init__(self, attempts: int) -> None:
        super().__init__(
            message=f"No representation found after {attempts} restarts",
            code="REPRESENTATION_NOT_FOUND",
            status_code=500,
        )


# --- Exception Handler ---


async def app_exception_handler(request: Request, exc: AppException) -> JSONResponse:
    """Central exception handler for AppException."""
    body = ErrorResponse(
        status=exc.status_code, message=exc.message, code=exc.code, details=exc.details
    )
    return JSONResponse(status_code=exc.status_code, content=body.model_dump())


async def validation_exception_handler(
    request: Request, exc: RequestValidationError
) -> JSONResponse:
    """Handler for Pydantic request validation errors."""
    body = ErrorResponse(
        status=422,
        message="Request body does not match the schema",
        code="VALIDATION_ERROR",
        details=[
            f"{'.'.join(str(part) for part in error['loc'])}: {error['msg']}"
            for error in exc.errors()
        ],
    )
    return JSONResponse(status_code=422, content=body.model_dump())
