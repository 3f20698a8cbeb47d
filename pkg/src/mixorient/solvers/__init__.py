"""End-to-end orientation algorithms.

Every solver returns a :class:`SolveResult` whose satisfied set has been
re-verified by reachability and whose ``certificate`` holds the counters
of its own guarantee accounting.
"""

from .common import SolveResult
from .exact import exact_optimum, solve_exact
from .fixed_paths import FixedPathInstance, max_independent_set, solve_fixed_paths
from .greedy import solve_greedy_cuberoot, solve_greedy_delta
from .structured import solve_fvs, solve_tree_centroid, solve_treewidth

ALGORITHMS = (
    "greedy_cuberoot", "greedy_delta", "treewidth", "fvs", "tree_centroid",
    "exact", "fixed_paths_greedy", "fixed_paths_exact",
)

__all__ = [
    "ALGORITHMS", "SolveResult", "FixedPathInstance", "solve_greedy_cuberoot", "solve_greedy_delta",
    "solve_treewidth", "solve_fvs", "solve_tree_centroid", "solve_exact", "exact_optimum",
    "solve_fixed_paths", "max_independent_set",
]
