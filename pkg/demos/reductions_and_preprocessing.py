"""
Hardness constructions and cycle contraction
============================================

The independent-set and max-dicut constructions turn small graphs into
orientation instances with the same optimum. Cycle contraction shows why
mixed cycles can be removed before solving.
"""

from itertools import combinations

from mixorient.graph import MixedGraph, count_satisfied
from mixorient.preprocess import contract_cycles, lift_orientation
from mixorient.reductions import gen_from_dicut, gen_from_independent_set, gen_grid_full_orientation
from mixorient.solvers import solve_exact, solve_fixed_paths

# a 5-cycle has maximum independent set 2
edges = [(i, (i + 1) % 5) for i in range(5)]
gen = gen_from_independent_set(5, edges)
res = solve_fixed_paths(gen.fixed_path_instance(), "exact")
print("5-cycle: graph on", gen.graph.n, "vertices, fixed-paths optimum", res.count)

# directed triangle plus a chord: best cut is 2
arcs = [(0, 1), (1, 2), (2, 0), (0, 2)]
gen = gen_from_dicut(3, arcs)
best = max(sum(1 for a, b in arcs if a in side and b not in side)
           for k in range(4) for side in map(set, combinations(range(3), k)))
print("dicut grid", gen.metadata["grid"], "optimum", solve_exact(gen.graph, gen.requests).count, "cut", best)

gen, orient = gen_grid_full_orientation(4, 5)
print("4x5 grid, all pairs:", count_satisfied(gen.graph, orient, gen.requests)[0], "of", len(gen.requests))

# an undirected triangle hanging off a directed edge
g = MixedGraph(4, [(3, 0)], [(0, 1), (1, 2), (2, 0)])
requests = [(0, 2), (3, 1), (2, 3)]
small, remapped, record = contract_cycles(g, requests)
print("contracted to", small.n, "vertices; auto-satisfied requests", record.auto_satisfied)
res = solve_exact(small, [r for i, r in enumerate(remapped) if i not in record.auto_satisfied])
lifted = lift_orientation(record, res.orientation)
print("lifted orientation", lifted, "satisfies", count_satisfied(g, lifted, requests)[0])
