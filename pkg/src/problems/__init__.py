"""Benchmark instance generators."""

from .bilinear import (
    SaddleInstance,
    as_inclusion,
    benchmark_start,
    bilinear_from_spec,
    definition_gap,
    dump_matrix_csv,
    gap,
    gap_function,
    gen_bilinear,
)
from .pseudo import (
    PseudoMonoInstance,
    ball_sampler,
    find_monotonicity_witness,
    gen_pseudo,
    make_pseudo_instance,
    pseudo_inclusion,
    pseudo_interior_solution,
    pseudo_monotonicity_violations,
    rotation_blocks,
)
from .sanity import known_solution_instance

__all__ = [
    "PseudoMonoInstance",
    "SaddleInstance",
    "as_inclusion",
    "ball_sampler",
    "benchmark_start",
    "bilinear_from_spec",
    "definition_gap",
    "dump_matrix_csv",
    "find_monotonicity_witness",
    "gap",
    "gap_function",
    "gen_bilinear",
    "gen_pseudo",
    "known_solution_instance",
    "make_pseudo_instance",
    "pseudo_inclusion",
    "pseudo_interior_solution",
    "pseudo_monotonicity_violations",
    "rotation_blocks",
]
