"""Line assignments on webs and the numeric reports built from them."""

from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np
import numpy.typing as npt

ComplexVector = npt.NDArray[np.complex128]


@dataclass(frozen=True, eq=False)
class Line:
    """The complex line spanned by a unit vector in C^3, defined up to phase."""

    v: ComplexVector

    @classmethod
    def from_vector(cls, vector: npt.ArrayLike) -> "Line":
        array = np.asarray(vector, dtype=np.complex128).reshape(3)
        norm = np.linalg.norm(array)
        if norm == 0:
            raise ValueError("zero vector spans no line")
        return cls(array / norm)

    def overlap(self, other: "Line") -> float:
        """|<v, w>| under the Hermitian pairing; 1 for equal lines, 0 for orthogonal."""
        return float(abs(np.vdot(self.v, other.v)))

    def coincides(self, other: "Line", tol: float = 1e-9) -> bool:
        return 1.0 - self.overlap(other) < tol

    def as_list(self) -> list[list[float]]:
        """[[re, im], ...] per component, for JSON output."""
        return [[float(z.real), float(z.imag)] for z in self.v]


@dataclass(frozen=True)
class RepresentationPoint:
    """Lines on every edge (dangling ones included) and on every free loop."""

    lines: Mapping[int, Line] = field(hash=False)
    loops: tuple[Line, ...] = ()
    seed: int | None = None


class SquareClass(StrEnum):
    BIG_EVEN = "big-even"
    BIG_ODD = "big-odd"
    SMALL = "small"
    UNCLASSIFIED = "unclassified"
    INCONSISTENT = "inconsistent"

    @property
    def is_big(self) -> bool:
        return self in (SquareClass.BIG_EVEN, SquareClass.BIG_ODD)


@dataclass(frozen=True)
class DimensionEstimate:
    est_dim: int
    rank: int
    parameters: int
    singular_values: tuple[float, ...]
    rank_gap: float

    def is_regular(self, gap_ratio: float) -> bool:
        return self.rank_gap >= gap_ratio


@dataclass(frozen=True)
class ComponentReport:
    residual: float
    relator_residual: float
    seed: int | None = None
    est_dim: int | None = None
    rank_gap: float | None = None
    classes: Mapping[str, SquareClass] = field(default_factory=dict, hash=False)


@dataclass(frozen=True)
class BoundaryDiagonalReport:
    holds: bool
    samples: int
    max_deviation: float


@dataclass(frozen=True)
class Census:
    """Class tuples over the listed squares with their frequencies and a witness seed each."""

    squares: tuple[str, ...]
    histogram: Mapping[tuple[SquareClass, ...], int] = field(hash=False)
    witnesses: Mapping[tuple[SquareClass, ...], int | None] = field(hash=False)
    samples: int = 0

    @property
    def classes(self) -> set[tuple[SquareClass, ...]]:
        return set(self.histogram)
