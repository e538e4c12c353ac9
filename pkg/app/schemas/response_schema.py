"""API response envelopes."""

from typing import Generic, TypeVar

from pydantic import BaseModel, Field

T = TypeVar("T")


class ErrorResponse(BaseModel):
    """Error envelope; ``details`` lists violations or invalid request fields."""

    status: int
    message: str
    code: str
    details: list[str] = Field(default_factory=list)


class ApiResponse(BaseModel, Generic[T]):
    status: int = 200
    message: str = "Success"
    data: T | None = None


def success_response(data: T, status: int = 200, message: str = "Success") -> dict:
    """Build a success response dict for returning from endpoints."""
    return {"status": status, "message": message, "data": data}
