"""Worst-case analysis of prune-driven case sweeps.

Pruning functions, the counting sweep, and the weighted DAGs whose heaviest
paths bound the ratio of cases checked to cases with solutions.
"""

from .bitcase import DomainError, has_prefix, prune, verify_prefix_lemmas
from .efficiency import (
    BudgetError,
    OracleError,
    ParNumber,
    RunOutcome,
    SolutionSet,
    enumerate_valid_sets,
    is_valid,
    max_ratio_bruteforce,
    par_number,
    run_efficiency,
    run_prune_sweep,
)
from .prunegraph import (
    BoxBounds,
    Color,
    GraphPath,
    PathResult,
    WeightedDag,
    box_bounds,
    build_gk,
    build_joined,
    count_paths,
    induced_box,
    max_weight_path,
    minimal_f,
    path_to_solution_set,
    run_to_path,
    to_dot,
    verify_structure,
)

__version__ = "0.1.0"
