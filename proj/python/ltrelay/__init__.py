"""Rateless-coded two-hop relay simulator.

Thin Python face over the C++ core: degree distributions, single seeded
simulation runs, and Monte-Carlo aggregation with deterministic outputs.
"""

from ._core import (
    Aggregate,
    DegreeDistribution,
    first_stage_length,
    ideal_soliton,
    mix_seed,
    monte_carlo,
    optimal_memory_order,
    robust_soliton,
    run_simulation,
)

__all__ = [
    "Aggregate",
    "DegreeDistribution",
    "first_stage_length",
    "ideal_soliton",
    "mix_seed",
    "monte_carlo",
    "optimal_memory_order",
    "robust_soliton",
    "run_simulation",
]

__version__ = "0.1.0"
