"""
Orienting a star, then the whole graph
=======================================

Three requests whose shortest paths all pass through vertex 0. We orient
only the edges touching 0, then push that choice out to the full graph.
"""

from mixorient.graph import MixedGraph, count_satisfied
from mixorient.local_orient import build_local_star, extend_to_global, orient_star_derandomized
from mixorient.pathfinding import route_all

# vertex 0 is the centre; 1 and 2 sit on the first request's path
edges = [(3, 1), (1, 0), (0, 2), (2, 4), (5, 6), (6, 0), (0, 7), (7, 8), (9, 0)]
g = MixedGraph(10, [], edges)
requests = [(3, 4), (5, 8), (9, 0)]

paths, unroutable = route_all(g, requests)
for p in paths:
    print("request", p.request, "path", p.vertices)

# each path touches at most two spokes of the star
star = build_local_star(g, {}, 0, paths)
for lp in star.local_paths:
    print("local path", lp.local_source, "->", lp.local_target, "spokes", len(lp))

res = orient_star_derandomized(star)
print("expected satisfied before any choice:", res.initial_expectation)
print("spoke directions:", res.directions)
print("locally satisfied:", res.satisfied)

chosen = [star.local_paths[k].path for k in res.satisfied]
orientation = extend_to_global(g, res.directions, chosen)
count, flags = count_satisfied(g, orientation, requests)
print("globally satisfied:", count, flags)

# opposite two-step paths: the star can only serve one of them
g = MixedGraph(3, [], [(0, 1), (0, 2)])
paths, _ = route_all(g, [(1, 2), (2, 1)])
res = orient_star_derandomized(build_local_star(g, {}, 0, paths))
print("opposite pair, expectation", res.initial_expectation, "-> satisfied", res.satisfied)
