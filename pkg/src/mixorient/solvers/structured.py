"""Solvers exploiting tree-like structure: treewidth, feedback vertex sets, forests.

Each one splits the routed paths into classes that can each be handled by
local solves at a few junction vertices, and keeps the best class.
"""

from __future__ import annotations

import time
from typing import Dict, List, Optional, Sequence, Tuple

from ..decomposition import (TreeDecomposition, centroid, component_vertex_sets,
                             feedback_vertex_set, tree_decomposition)
from ..errors import InvariantError, PreconditionError
from ..graph import MixedGraph, find_undirected_cycle
from ..local_orient import extend_to_global, local_solve
from ..pathfinding import RoutedPath, in_conflict, route_all
from .common import finish, log2_levels, require_acyclic


def _merge_compatible(groups: Sequence[Tuple[object, List[RoutedPath]]]) -> List[RoutedPath]:
    """Greedily union path groups, largest first, skipping groups that conflict with the union."""
    merged: List[RoutedPath] = []
    for _, group in sorted(groups, key=lambda kv: (-len(kv[1]), kv[0])):
        if all(in_conflict(p, q) is None for p in group for q in merged):
            merged.extend(group)
    return merged


def _local_yield(graph: MixedGraph, v: int, paths: List[RoutedPath]) -> List[RoutedPath]:
    by_id = {p.request: p for p in paths}
    sol = local_solve(graph, None, v, paths)
    if 4 * len(sol.satisfied) < len(paths):
        raise InvariantError(f"local solve at {v} below a quarter of {len(paths)} paths")
    return [by_id[r] for r in sol.satisfied]


def _centroid_levels(graph: MixedGraph, paths: List[RoutedPath], vertices: Sequence[int]):
    """Vertex-centroid recursion over the forest induced by ``vertices``.

    Returns a list of levels, each ``(class_size, satisfied_paths, centroids)``.
    Paths handled at one level cross exactly one of that level's centroids
    and live in pairwise vertex-disjoint subtrees, so their local solutions
    combine without conflicts.
    """
    allowed = set(vertices)
    nbrs = {v: {w for w in nb if w in allowed}
            for v, nb in enumerate(graph.simple_neighbors()) if v in allowed}
    for p in paths:
        if not p.vertex_set <= allowed:
            raise InvariantError(f"path of request {p.request} leaves the forest")
    frontier = component_vertex_sets(nbrs, allowed)
    unassigned = list(range(len(paths)))
    levels = []
    while unassigned:
        if not frontier:
            raise InvariantError("centroid recursion exhausted the forest with paths left over")
        centroids = [centroid(nbrs, comp) for comp in frontier]
        buckets: Dict[int, List[RoutedPath]] = {}
        rest = []
        for i in unassigned:
            hits = [c for c in centroids if c in paths[i].vertex_set]
            if len(hits) > 1:
                raise InvariantError(f"path of request {paths[i].request} crosses two centroids of one level")
            if hits:
                buckets.setdefault(hits[0], []).append(paths[i])
            else:
                rest.append(i)
        chosen: List[RoutedPath] = []
        for c in sorted(buckets):
            chosen += _local_yield(graph, c, buckets[c])
        extend_to_global(graph, None, chosen)  # asserts the level's solutions are compatible
        levels.append((len(unassigned) - len(rest), chosen, centroids))
        unassigned = rest
        frontier = [part for comp, c in zip(frontier, centroids)
                    for part in component_vertex_sets(nbrs, set(comp) - {c})]
    bound = log2_levels(len(allowed))
    if len(levels) > max(bound, 1):
        raise InvariantError(f"{len(levels)} centroid levels exceed the bound {bound}")
    return levels


def _best_level(levels):
    best = max(range(len(levels)), key=lambda i: (len(levels[i][1]), -i)) if levels else None
    return best


def solve_tree_centroid(graph: MixedGraph, requests: Sequence[Tuple[int, int]]):
    """Centroid recursion on a mixed forest; best level wins.

    Each level orients, around every centroid of the current subtrees, the
    paths crossing it. The best level satisfies at least
    ``|P| / (4 * levels)`` paths with ``levels <= floor(log2 n) + 1``.
    """
    started = time.perf_counter()
    cycle = find_undirected_cycle(graph)
    if cycle is not None:
        raise PreconditionError(f"undirected version is not a forest (cycle {cycle})")
    require_acyclic(graph)
    paths, unroutable = route_all(graph, requests)
    levels = _centroid_levels(graph, paths, range(graph.n))
    best = _best_level(levels)
    chosen = levels[best][1] if levels else []
    if levels and 4 * len(levels) * len(chosen) < len(paths):
        raise InvariantError("best centroid level below |P| / (4 * levels)")
    orientation = extend_to_global(graph, None, chosen)
    cert = {
        "routable": len(paths), "levels": len(levels),
        "class_sizes": [lv[0] for lv in levels], "class_yields": [len(lv[1]) for lv in levels],
        "chosen_class": best,
    }
    return finish("tree_centroid", graph, requests, orientation, [p.request for p in chosen],
                  len(paths), unroutable, cert, started)


def solve_treewidth(graph: MixedGraph, requests: Sequence[Tuple[int, int]],
                    decomposition: Optional[TreeDecomposition] = None):
    """Class-by-centroid-bag algorithm over a tree decomposition.

    Level ``i`` takes the centroid bag of every remaining subtree of the
    decomposition; an unassigned path joins the collection of the first bag
    vertex (in ascending order) it crosses. Each collection is solved
    locally, compatible collections are merged, and the best level wins.
    """
    started = time.perf_counter()
    require_acyclic(graph)
    td = tree_decomposition(graph, decomposition)
    paths, unroutable = route_all(graph, requests)
    bag_size = td.width + 1
    frontier = component_vertex_sets(td.tree, range(td.size)) if td.size else []
    unassigned = list(range(len(paths)))
    classes = []
    while unassigned:
        if not frontier:
            raise InvariantError("decomposition exhausted with unassigned paths")
        centroids = [centroid(td.tree, comp) for comp in frontier]
        collections: Dict[Tuple[int, int], List[RoutedPath]] = {}
        rest = []
        for i in unassigned:
            vs = paths[i].vertex_set
            hits = [c for c in centroids if vs & td.bags[c]]
            if len(hits) > 1:
                raise InvariantError(f"path of request {paths[i].request} crosses two centroid bags of one level")
            if not hits:
                rest.append(i)
                continue
            c = hits[0]
            first = next(v for v in sorted(td.bags[c]) if v in vs)
            collections.setdefault((c, first), []).append(paths[i])
        groups = [(key, _local_yield(graph, key[1], ps)) for key, ps in sorted(collections.items())]
        merged = _merge_compatible(groups)
        best_single = max((len(g) for _, g in groups), default=0)
        per_subtree: Dict[int, int] = {}
        for (c, _), g in groups:
            per_subtree[c] = max(per_subtree.get(c, 0), len(g))
        class_size = len(unassigned) - len(rest)
        if len(merged) < best_single or len(merged) < sum(per_subtree.values()):
            raise InvariantError("merging collections lost paths")
        if 4 * bag_size * len(merged) < class_size:
            raise InvariantError("class yield below |C| / (4 (k + 1))")
        classes.append({"size": class_size, "collections": len(groups), "best_single": best_single,
                        "chosen": merged})
        unassigned = rest
        frontier = [part for comp, c in zip(frontier, centroids)
                    for part in component_vertex_sets(td.tree, set(comp) - {c})]
    if len(classes) > max(log2_levels(td.size), 1):
        raise InvariantError("more classes than centroid levels allow")
    best = max(range(len(classes)), key=lambda i: (len(classes[i]["chosen"]), -i)) if classes else None
    chosen = classes[best]["chosen"] if classes else []
    if classes and 4 * bag_size * len(classes) * len(chosen) < len(paths):
        raise InvariantError("best class below |P| / (4 (k + 1) levels)")
    orientation = extend_to_global(graph, None, chosen)
    cert = {
        "routable": len(paths), "width": td.width, "bags": td.size, "levels": len(classes),
        "class_sizes": [c["size"] for c in classes],
        "class_collections": [c["collections"] for c in classes],
        "class_best_single": [c["best_single"] for c in classes],
        "class_yields": [len(c["chosen"]) for c in classes],
        "chosen_class": best,
    }
    return finish("treewidth", graph, requests, orientation, [p.request for p in chosen],
                  len(paths), unroutable, cert, started)


def solve_fvs(graph: MixedGraph, requests: Sequence[Tuple[int, int]], fvs: Optional[Sequence[int]] = None):
    """Classes by first feedback vertex crossed, plus the forest class.

    Paths through ``F`` are grouped by the first ``F`` vertex (in ``F``
    order) they cross and solved locally there; paths avoiding ``F`` are
    solved by the centroid recursion on ``G - F``. The best class wins.
    """
    started = time.perf_counter()
    require_acyclic(graph)
    fv = feedback_vertex_set(graph, "provided", fvs) if fvs is not None else feedback_vertex_set(graph)
    order = list(fv.vertices)
    paths, unroutable = route_all(graph, requests)
    classes: List[List[RoutedPath]] = [[] for _ in order]
    forest_class: List[RoutedPath] = []
    for p in paths:
        j = next((j for j, v in enumerate(order) if v in p.vertex_set), None)
        (forest_class if j is None else classes[j]).append(p)
    if sum(map(len, classes)) + len(forest_class) != len(paths):
        raise InvariantError("feedback-vertex classes do not partition the paths")

    options = []
    for v, cls in zip(order, classes):
        options.append(_local_yield(graph, v, cls) if cls else [])
    removed = set(order)
    levels = _centroid_levels(graph, forest_class, [v for v in range(graph.n) if v not in removed])
    lb = _best_level(levels)
    forest_choice = levels[lb][1] if levels else []
    if levels and 4 * len(levels) * len(forest_choice) < len(forest_class):
        raise InvariantError("forest class below |C| / (4 * levels)")
    options.append(forest_choice)
    best = max(range(len(options)), key=lambda i: (len(options[i]), -i))
    chosen = options[best]
    orientation = extend_to_global(graph, None, chosen)
    cert = {
        "routable": len(paths), "fvs": order, "fvs_method": fv.method,
        "class_sizes": [len(c) for c in classes] + [len(forest_class)],
        "class_yields": [len(o) for o in options],
        "forest_levels": len(levels),
        "chosen_class": best,
    }
    return finish("fvs", graph, requests, orientation, [p.request for p in chosen],
                  len(paths), unroutable, cert, started)
