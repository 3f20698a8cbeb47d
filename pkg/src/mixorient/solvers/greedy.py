"""Greedy orientation algorithms for general mixed acyclic graphs."""

from __future__ import annotations

import time
from typing import Sequence, Tuple

from ..errors import InvariantError
from ..graph import MixedGraph, complete_orientation
from ..local_orient import local_solve, orient_path
from ..pathfinding import conflict_adjacency, route_all
from .common import ceil_div, ceil_root, finish, require_acyclic


def _crossing_counts(graph: MixedGraph, paths, pending, vertices=None):
    vertices = range(graph.n) if vertices is None else vertices
    counts = {}
    for v in vertices:
        counts[v] = sum(1 for i in pending if v in paths[i].vertex_set)
    return counts


def solve_greedy_cuberoot(graph: MixedGraph, requests: Sequence[Tuple[int, int]]):
    """Greedy orientation with the ``(n |P|)^(1/3)`` conflict threshold.

    While some pending path conflicts with fewer than ``T = (n |P|)^(1/3)``
    pending paths, the one with fewest conflicts is oriented and its
    conflicting paths are dropped. The remaining paths all have at least
    ``T`` conflicts; the vertex crossed by most of them is solved locally.

    ``|P|`` counts routable requests only. The threshold test
    ``degree < T`` is evaluated as ``degree**3 < n * |P|``.
    """
    started = time.perf_counter()
    require_acyclic(graph)
    paths, unroutable = route_all(graph, requests)
    m = len(paths)
    n_p = graph.n * m
    ceil_t = ceil_root(n_p, 3)
    adj = conflict_adjacency(paths)
    degree = [len(a) for a in adj]
    pending = set(range(m))
    orientation = {}
    a1, discards = [], []

    while True:
        below = [i for i in pending if degree[i] ** 3 < n_p]
        if not below:
            break
        i = min(below, key=lambda k: (degree[k], paths[k].request))
        removed = {i} | (adj[i] & pending)
        if len(removed) > ceil_t:
            raise InvariantError(f"iteration removed {len(removed)} paths, more than ceil(T) = {ceil_t}")
        orient_path(orientation, paths[i])
        a1.append(paths[i].request)
        discards.append(len(removed) - 1)
        pending -= removed
        for r in removed:
            for q in adj[r] & pending:
                degree[q] -= 1

    p1 = m - len(pending)
    if len(a1) * max(ceil_t, 1) < p1:
        raise InvariantError("greedy phase satisfied fewer than |P1| / ceil(T) paths")
    cert = {
        "n": graph.n, "routable": m, "threshold_cubed": n_p, "ceil_threshold": ceil_t,
        "iterations": len(a1), "discards": discards, "discards_total": sum(discards),
        "A1": len(a1), "P1": p1, "P2": len(pending),
        "junction": None, "crossing": 0, "A2": 0, "min_pending_degree": None,
    }
    claimed = list(a1)
    if pending:
        min_deg = min(degree[i] for i in pending)
        if min_deg ** 3 < n_p:
            raise InvariantError("main loop exited with a pending path below the threshold")
        counts = _crossing_counts(graph, paths, pending)
        v = min(counts, key=lambda x: (-counts[x], x))
        crossing = sorted((paths[i] for i in pending if v in paths[i].vertex_set), key=lambda p: p.request)
        sol = local_solve(graph, orientation, v, crossing, require_unblocked=True)
        if 4 * len(sol.satisfied) < len(crossing):
            raise InvariantError("local phase satisfied fewer than ceil(|P_v| / 4) paths")
        orientation = sol.orientation
        claimed += sol.satisfied
        cert.update(junction=v, crossing=len(crossing), A2=len(sol.satisfied), min_pending_degree=min_deg)
    else:
        orientation = complete_orientation(graph, orientation)
    if cert["A1"] + cert["discards_total"] + cert["P2"] != m:
        raise InvariantError("certificate counters do not add up to the routable request count")

    result = finish("greedy_cuberoot", graph, requests, orientation, claimed, m, unroutable, cert, started)
    routed_ids = {p.request for p in paths}
    if sum(1 for r in result.satisfied if r in routed_ids) < cert["A1"] + cert["A2"]:
        raise InvariantError("total satisfied below A1 + A2")
    return result


def solve_greedy_delta(graph: MixedGraph, requests: Sequence[Tuple[int, int]]):
    """Greedy orientation with the ``sqrt(Delta |P|)`` conflict threshold.

    Paths are taken in request order; each one is oriented (dropping its
    pending conflicts) unless it conflicts with more than
    ``sqrt(Delta |P|)`` pending paths, where ``Delta`` is the longest routed
    path. In that case the vertex of the path crossed by most pending paths
    is solved locally and the algorithm stops.
    """
    started = time.perf_counter()
    require_acyclic(graph)
    paths, unroutable = route_all(graph, requests)
    m = len(paths)
    delta = max((len(p) for p in paths), default=0)
    threshold_sq = delta * m
    adj = conflict_adjacency(paths)
    pending = set(range(m))
    orientation = {}
    a1, discards = [], []
    cert = {
        "routable": m, "delta": delta, "threshold_squared": threshold_sq,
        "aborted": False, "abort_request": None, "junction": None, "crossing": 0,
        "required_crossing": None, "A2": 0,
    }
    claimed = []
    for i in range(m):
        if i not in pending:
            continue
        conflicts = adj[i] & pending
        if len(conflicts) ** 2 > threshold_sq:
            path = paths[i]
            counts = _crossing_counts(graph, paths, pending, sorted(path.vertex_set))
            v = min(counts, key=lambda x: (-counts[x], x))
            need = ceil_root(ceil_div(m, delta), 2) if delta else 0
            if counts[v] ** 2 * delta < m:
                raise InvariantError(f"abort vertex {v} crossed by only {counts[v]} pending paths")
            crossing = sorted((paths[k] for k in pending if v in paths[k].vertex_set), key=lambda p: p.request)
            sol = local_solve(graph, orientation, v, crossing, require_unblocked=True)
            orientation = sol.orientation
            claimed = sol.satisfied
            cert.update(aborted=True, abort_request=path.request, junction=v, crossing=len(crossing),
                        required_crossing=need, A2=len(sol.satisfied))
            break
        orient_path(orientation, paths[i])
        a1.append(paths[i].request)
        discards.append(len(conflicts))
        pending -= conflicts | {i}
    if not cert["aborted"]:
        orientation = complete_orientation(graph, orientation)
    cert.update(A1=len(a1), discards=discards, discards_total=sum(discards),
                P2=len(pending) if cert["aborted"] else 0)
    return finish("greedy_delta", graph, requests, orientation, claimed + a1, m, unroutable, cert, started)
