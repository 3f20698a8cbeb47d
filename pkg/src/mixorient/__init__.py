"""Solvers for maximum mixed graph orientation.

Orient the undirected edges of a mixed graph so that as many
source-target requests as possible admit a directed path.
"""

from .errors import (CapExceeded, ContractViolation, InputError, InvariantError,
                     PreconditionError, ValidationError)
from .graph import (MixedGraph, Request, build_graph, complete_orientation, count_satisfied,
                    reachable_set, validate_orientation)
from .local_orient import local_solve
from .pathfinding import RoutedPath, in_conflict, route_all, shortest_mixed_path
from .preprocess import contract_cycles, find_proper_cycle, lift_orientation
from .solvers import (SolveResult, solve_exact, solve_fixed_paths, solve_fvs, solve_greedy_cuberoot,
                      solve_greedy_delta, solve_tree_centroid, solve_treewidth)

__version__ = "0.1.0"
