"""
Solvers for tree-like graphs
============================

Forests are split by centroids, bounded-treewidth graphs by centroid bags,
and graphs with a small feedback vertex set by the first such vertex each
path crosses.
"""

from mixorient.decomposition import feedback_vertex_set, tree_decomposition
from mixorient.graph import MixedGraph
from mixorient.reductions import gen_random_acyclic, gen_random_forest
from mixorient.solvers import solve_exact, solve_fvs, solve_tree_centroid, solve_treewidth

# a 7-vertex path: the middle vertex is the first centroid
g = MixedGraph(7, [], [(v, v + 1) for v in range(6)])
res = solve_tree_centroid(g, [(2, 4), (6, 0), (0, 1), (6, 5)])
print("path: class sizes per level", res.certificate["class_sizes"], "yields", res.certificate["class_yields"])

forest = gen_random_forest(12, 0.3, 8, seed=3)
res = solve_tree_centroid(forest.graph, forest.requests)
print("forest:", res.count, "of", len(forest.requests), "optimum", solve_exact(forest.graph, forest.requests).count)

inst = gen_random_acyclic(12, 0.8, 0.25, 8, seed=5)
td = tree_decomposition(inst.graph)
fvs = feedback_vertex_set(inst.graph)
print("decomposition width", td.width, "bags", td.size, "| feedback vertices", list(fvs.vertices))

for solver in (solve_treewidth, solve_fvs):
    res = solver(inst.graph, inst.requests)
    print(f"{res.algorithm:10s} satisfied {res.count}  classes {res.certificate['class_sizes']}")
print("optimum", solve_exact(inst.graph, inst.requests).count)
