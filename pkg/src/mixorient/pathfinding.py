"""Shortest-path routing of requests and pairwise path conflicts."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .errors import InputError
from .graph import UNDIRECTED, EdgeRef, MixedGraph


@dataclass(frozen=True)
class RoutedPath:
    """A request's path as ``(edge, from, to)`` steps."""

    request: int
    source: int
    target: int
    steps: Tuple[Tuple[EdgeRef, int, int], ...]

    def __len__(self):
        return len(self.steps)

    @cached_property
    def vertices(self) -> Tuple[int, ...]:
        if not self.steps:
            return (self.source,)
        return (self.steps[0][1],) + tuple(to for _, _, to in self.steps)

    @cached_property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    @cached_property
    def directions(self) -> Dict[int, Tuple[int, int]]:
        """Direction implied on each undirected edge of the path."""
        return {ref.id: (frm, to) for ref, frm, to in self.steps if ref.kind == UNDIRECTED}

    def crosses(self, v: int) -> bool:
        return v in self.vertex_set


class ConflictWitness(NamedTuple):
    edge: int
    first: Tuple[int, int]
    second: Tuple[int, int]


def shortest_mixed_path(graph: MixedGraph, s: int, t: int, request: int = -1) -> Optional[RoutedPath]:
    """BFS shortest path from ``s`` to ``t`` in the mixed graph.

    Neighbors are scanned in edge-reference order and the first discovered
    parent is kept, so ties are broken deterministically.
    """
    if s == t:
        return RoutedPath(request, s, t, ())
    parent: Dict[int, Optional[Tuple[EdgeRef, int]]] = {s: None}
    queue = deque([s])
    while queue and t not in parent:
        v = queue.popleft()
        for ref, w in graph.out[v]:
            if w not in parent:
                parent[w] = (ref, v)
                queue.append(w)
    if t not in parent:
        return None
    steps = []
    v = t
    while parent[v] is not None:
        ref, u = parent[v]
        steps.append((ref, u, v))
        v = u
    return RoutedPath(request, s, t, tuple(reversed(steps)))


def route_all(graph: MixedGraph, requests: Sequence[Tuple[int, int]]):
    """Route every request with ``source != target``.

    Returns ``(paths, unroutable_ids)``. Requests with equal endpoints are
    vacuously satisfied and appear in neither list.
    """
    paths, unroutable = [], []
    for i, (s, t) in enumerate(requests):
        if s == t:
            continue
        p = shortest_mixed_path(graph, s, t, i)
        if p is None:
            unroutable.append(i)
        else:
            paths.append(p)
    return paths, unroutable


def in_conflict(p: RoutedPath, q: RoutedPath) -> Optional[ConflictWitness]:
    """Lowest-id shared undirected edge that ``p`` and ``q`` traverse oppositely."""
    dp, dq = p.directions, q.directions
    for e in sorted(dp.keys() & dq.keys()):
        if dp[e] != dq[e]:
            return ConflictWitness(e, dp[e], dq[e])
    return None


def conflict_degrees(paths: Sequence[RoutedPath]):
    """Per-path conflict counts and the sorted list of conflicting index pairs.

    Pairs are found through a per-edge index of traversal directions rather
    than by testing all pairs.
    """
    by_edge: Dict[Tuple[int, Tuple[int, int]], List[int]] = {}
    for i, p in enumerate(paths):
        for e, d in p.directions.items():
            by_edge.setdefault((e, d), []).append(i)
    pairs = set()
    for (e, (a, b)), users in by_edge.items():
        if a > b:
            continue
        for j in by_edge.get((e, (b, a)), ()):
            for i in users:
                pairs.add((min(i, j), max(i, j)))
    degrees = [0] * len(paths)
    for i, j in pairs:
        degrees[i] += 1
        degrees[j] += 1
    return degrees, sorted(pairs)


def conflict_adjacency(paths: Sequence[RoutedPath]) -> List[set]:
    _, pairs = conflict_degrees(paths)
    adj = [set() for _ in paths]
    for i, j in pairs:
        adj[i].add(j)
        adj[j].add(i)
    return adj


def path_from_vertices(graph: MixedGraph, vertices: Sequence[int], request: int = -1) -> RoutedPath:
    """Turn a vertex sequence into steps, preferring a directed edge, then the lowest-id undirected one."""
    steps = []
    for u, v in zip(vertices, vertices[1:]):
        choice = None
        for ref, w in graph.out[u]:
            if w == v:
                choice = ref
                break
        if choice is None:
            raise InputError(f"no usable edge from {u} to {v} for mandated path of request {request}")
        steps.append((choice, u, v))
    if not vertices:
        raise InputError(f"mandated path of request {request} is empty")
    return RoutedPath(request, vertices[0], vertices[-1], tuple(steps))


def path_length_is_shortest(graph: MixedGraph, path: RoutedPath) -> bool:
    ref = shortest_mixed_path(graph, path.source, path.target)
    return ref is not None and len(ref) == len(path)

