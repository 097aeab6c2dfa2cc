"""Percolation, Randic index, greedy animals and ball growth on finite windows."""

from .greedy import (
    AnimalIncidence,
    GreedyResult,
    GrowthReport,
    GrowthRow,
    WeightModel,
    animal_incidence,
    greedy_growth_experiment,
    greedy_score,
)
from .growth import GrowthCheck, ball_growth_check
from .percolation import (
    PercolationConfig,
    PercolationTable,
    ReachRow,
    half_line_check,
    path_envelope_check,
    percolation_run,
)
from .randic import RandicMax, randic_index, randic_max

__all__ = [
    "AnimalIncidence",
    "GreedyResult",
    "GrowthCheck",
    "GrowthReport",
    "GrowthRow",
    "PercolationConfig",
    "PercolationTable",
    "RandicMax",
    "ReachRow",
    "WeightModel",
    "animal_incidence",
    "ball_growth_check",
    "greedy_growth_experiment",
    "greedy_score",
    "half_line_check",
    "path_envelope_check",
    "percolation_run",
    "randic_index",
    "randic_max",
]
