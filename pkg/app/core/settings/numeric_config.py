"""Tolerances and budgets for the SU(3) numeric verifier."""

from pydantic import BaseModel


class NumericConfig(BaseModel, frozen=True):
    """Numeric thresholds shared by representation search and rank estimation."""

    residual_tolerance: float = 1e-9
    line_tolerance: float = 1e-9
    near_parallel_tolerance: float = 1e-6
    rank_tolerance: float = 1e-6
    rank_gap_ratio: float = 1e3
    relator_factor: float = 10.0
    restart_budget: int = 1000
    census_workers: int = 1

    @property
    def relator_tolerance(self) -> float:
        """Bound on ||M1 M2 M3 - I|| at a vertex."""
        return self.relator_factor * self.residual_tolerance
