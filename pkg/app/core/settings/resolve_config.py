"""Resolution and combinatorics configuration."""

from pydantic import BaseModel


class ResolveConfig(BaseModel, frozen=True):
    """Limits for exhaustive searches and the default random seed."""

    coloring_edge_limit: int = 24
    default_seed: int = 0
    random_policy_trials: int = 100
