"""Orientation with fixed paths: every request must use its mandated path.

A set of requests is simultaneously satisfiable exactly when no two of
their paths need an undirected edge in opposite directions, so the problem
is maximum independent set on the path conflict graph.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from ..errors import CapExceeded, InputError, InvariantError
from ..graph import UNDIRECTED, MixedGraph, Request, complete_orientation
from ..local_orient import orient_path
from ..pathfinding import RoutedPath, conflict_adjacency, path_from_vertices
from .common import finish

EXACT_PATH_CAP = 30


@dataclass
class FixedPathInstance:
    graph: MixedGraph
    requests: List[Request]
    paths: List[List[int]] = field(default_factory=list)  # vertex sequence per request

    def routed(self) -> List[RoutedPath]:
        if len(self.paths) != len(self.requests):
            raise InputError(f"{len(self.requests)} requests but {len(self.paths)} mandated paths")
        out = []
        for i, ((s, t), verts) in enumerate(zip(self.requests, self.paths)):
            if not verts or verts[0] != s or verts[-1] != t:
                raise InputError(f"mandated path of request {i} does not run from {s} to {t}")
            out.append(path_from_vertices(self.graph, verts, i))
        return out


def _self_conflicting(p: RoutedPath) -> bool:
    seen = {}
    for ref, frm, to in p.steps:
        if ref.kind == UNDIRECTED and seen.setdefault(ref.id, (frm, to)) != (frm, to):
            return True
    return False


def path_is_oriented(orientation, p: RoutedPath) -> bool:
    return all(orientation[ref.id] == (frm, to) for ref, frm, to in p.steps if ref.kind == UNDIRECTED)


def max_independent_set(adj: Sequence[set], candidates: Sequence[int]) -> List[int]:
    """Maximum independent set by branch and bound over bitmasks."""
    cand0 = 0
    for v in candidates:
        cand0 |= 1 << v
    nb = [0] * len(adj)
    for v, ns in enumerate(adj):
        for w in ns:
            nb[v] |= 1 << w
    best = [0, 0]  # size, mask

    def rec(chosen: int, size: int, cand: int) -> None:
        if size + bin(cand).count("1") <= best[0]:
            return
        if not cand:
            best[0], best[1] = size, chosen
            return
        # branch on the candidate with most candidate neighbours
        v, deg = -1, -1
        rest = cand
        while rest:
            low = rest & -rest
            u = low.bit_length() - 1
            d = bin(nb[u] & cand).count("1")
            if d > deg:
                v, deg = u, d
            rest ^= low
        bit = 1 << v
        if deg == 0:
            rec(chosen | cand, size + bin(cand).count("1"), 0)
            return
        rec(chosen | bit, size + 1, cand & ~bit & ~nb[v])
        rec(chosen, size, cand & ~bit)

    rec(0, 0, cand0)
    return [v for v in range(len(adj)) if best[1] >> v & 1]


def greedy_independent_set(adj: Sequence[set], candidates: Sequence[int]) -> List[int]:
    """Repeatedly take the minimum-degree remaining vertex (ties: lowest id) and drop its neighbours."""
    alive = set(candidates)
    chosen = []
    while alive:
        v = min(alive, key=lambda x: (len(adj[x] & alive), x))
        chosen.append(v)
        alive -= adj[v] | {v}
    return sorted(chosen)


def solve_fixed_paths(instance: FixedPathInstance, mode: str = "greedy"):
    """Choose a pairwise non-conflicting set of mandated paths and orient them.

    ``mode`` is ``"exact"`` (branch and bound, at most 30 paths) or
    ``"greedy"``. Paths that reverse one of their own edges can never be
    satisfied and are left out.
    """
    started = time.perf_counter()
    paths = instance.routed()
    if mode == "exact" and len(paths) > EXACT_PATH_CAP:
        raise CapExceeded(f"exact fixed-paths solver refuses {len(paths)} paths (cap {EXACT_PATH_CAP})")
    adj = conflict_adjacency(paths)
    usable = [i for i, p in enumerate(paths) if not _self_conflicting(p)]
    if mode == "exact":
        chosen = max_independent_set(adj, usable)
    elif mode == "greedy":
        chosen = greedy_independent_set(adj, usable)
    else:
        raise InputError(f"unknown fixed-paths mode {mode!r}")
    orientation = {}
    for i in chosen:
        orient_path(orientation, paths[i])
    orientation = complete_orientation(instance.graph, orientation)
    fixed_ok = [i for i, p in enumerate(paths) if path_is_oriented(orientation, p)]
    if not set(chosen) <= set(fixed_ok):
        raise InvariantError("a chosen mandated path is not oriented source to target")
    reach = finish(f"fixed_paths_{mode}", instance.graph, instance.requests, orientation, fixed_ok,
                   len(paths), [], {}, started)
    reach.certificate = {
        "paths": len(paths), "conflict_pairs": sum(map(len, adj)) // 2,
        "self_conflicting": len(paths) - len(usable), "chosen": len(chosen),
        "reachability_satisfied": reach.count,
    }
    reach.satisfied = fixed_ok
    return reach
