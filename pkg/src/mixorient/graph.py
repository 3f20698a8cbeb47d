"""Index-based mixed graphs, orientations and request satisfaction.

Vertices are dense integers ``0..n-1``. Directed and undirected edges live
in two separate id spaces; an edge is referred to by an :class:`EdgeRef`
``(kind, id)`` with ``kind`` either ``"D"`` or ``"U"``.

An orientation is a plain ``dict`` mapping undirected edge ids to an
ordered ``(from, to)`` pair. A *partial* orientation covers only some ids.
"""

from __future__ import annotations

from collections import deque
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple

from .errors import ContractViolation, InputError

DIRECTED = "D"
UNDIRECTED = "U"

Orientation = Dict[int, Tuple[int, int]]


class EdgeRef(NamedTuple):
    kind: str
    id: int


class Request(NamedTuple):
    source: int
    target: int


class Violation(NamedTuple):
    edge: int
    reason: str


class MixedGraph:
    """Immutable mixed graph ``G = (V, E_D + E_U)``.

    ``incident[v]`` lists ``(EdgeRef, other_endpoint)`` for every edge
    touching ``v``, sorted by edge reference (directed before undirected,
    then by id). ``out[v]`` is the subset usable when leaving ``v`` with
    undirected edges treated as two-way.
    """

    __slots__ = ("n", "directed", "undirected", "incident", "out")

    def __init__(self, n: int, directed: Sequence[Tuple[int, int]] = (),
                 undirected: Sequence[Tuple[int, int]] = ()):
        if n < 0:
            raise InputError(f"vertex count must be nonnegative, got {n}")
        self.n = n
        self.directed = tuple((int(a), int(b)) for a, b in directed)
        self.undirected = tuple((int(a), int(b)) for a, b in undirected)
        for kind, edges in ((DIRECTED, self.directed), (UNDIRECTED, self.undirected)):
            for i, (a, b) in enumerate(edges):
                if not (0 <= a < n and 0 <= b < n):
                    raise InputError(f"edge {kind}{i} ({a}, {b}) has an endpoint outside 0..{n - 1}")
                if a == b:
                    raise InputError(f"edge {kind}{i} ({a}, {b}) is a self-loop")

        incident: List[list] = [[] for _ in range(n)]
        out: List[list] = [[] for _ in range(n)]
        for i, (a, b) in enumerate(self.directed):
            ref = EdgeRef(DIRECTED, i)
            incident[a].append((ref, b))
            incident[b].append((ref, a))
            out[a].append((ref, b))
        for i, (a, b) in enumerate(self.undirected):
            ref = EdgeRef(UNDIRECTED, i)
            incident[a].append((ref, b))
            incident[b].append((ref, a))
            out[a].append((ref, b))
            out[b].append((ref, a))
        self.incident = tuple(tuple(sorted(x)) for x in incident)
        self.out = tuple(tuple(sorted(x)) for x in out)

    def __repr__(self):
        return (f"MixedGraph(n={self.n}, directed={list(self.directed)}, "
                f"undirected={list(self.undirected)})")

    def __eq__(self, other):
        if not isinstance(other, MixedGraph):
            return NotImplemented
        return (self.n, self.directed, self.undirected) == (other.n, other.directed, other.undirected)

    def __hash__(self):
        return hash((self.n, self.directed, self.undirected))

    @property
    def num_undirected(self) -> int:
        return len(self.undirected)

    def endpoints(self, ref: EdgeRef) -> Tuple[int, int]:
        return self.directed[ref.id] if ref.kind == DIRECTED else self.undirected[ref.id]

    def simple_neighbors(self) -> List[Set[int]]:
        """Neighbor sets of the simple undirected version of the graph."""
        nbrs: List[Set[int]] = [set() for _ in range(self.n)]
        for a, b in self.directed + self.undirected:
            nbrs[a].add(b)
            nbrs[b].add(a)
        return nbrs

    def has_cycle_in_undirected_version(self, removed: Iterable[int] = ()) -> bool:
        return find_undirected_cycle(self, removed) is not None


def build_graph(vertex_count: int, directed_edges: Iterable[Tuple[int, int]] = (),
                undirected_edges: Iterable[Iterable[int]] = ()) -> MixedGraph:
    """Build a :class:`MixedGraph`; undirected edge ids follow input order."""
    und = []
    for e in undirected_edges:
        pair = tuple(e)
        if len(pair) == 1:  # {a, a} collapses to a one-element set
            pair = (pair[0], pair[0])
        if len(pair) != 2:
            raise InputError(f"undirected edge {e!r} must have two endpoints")
        und.append(pair)
    return MixedGraph(vertex_count, list(directed_edges), und)


def default_direction(graph: MixedGraph, edge: int) -> Tuple[int, int]:
    a, b = graph.undirected[edge]
    return (a, b) if a < b else (b, a)


def complete_orientation(graph: MixedGraph, partial: Optional[Orientation] = None) -> Orientation:
    """Extend ``partial`` to a total orientation, lower id -> higher id on the rest."""
    partial = partial or {}
    return {e: partial[e] if e in partial else default_direction(graph, e)
            for e in range(graph.num_undirected)}


def _check_vertex(graph: MixedGraph, v: int) -> None:
    if not 0 <= v < graph.n:
        raise InputError(f"vertex {v} outside 0..{graph.n - 1}")


def reachable_set(graph: MixedGraph, orientation: Optional[Orientation], s: int) -> Set[int]:
    """Vertices reachable from ``s``.

    Directed edges are followed tail to head, oriented undirected edges only
    in their assigned direction, and unoriented undirected edges both ways.
    """
    _check_vertex(graph, s)
    orientation = orientation or {}
    seen = {s}
    queue = deque([s])
    while queue:
        v = queue.popleft()
        for ref, w in graph.out[v]:
            if w in seen:
                continue
            if ref.kind == UNDIRECTED:
                d = orientation.get(ref.id)
                if d is not None and d[0] != v:
                    continue
            seen.add(w)
            queue.append(w)
    return seen


def validate_orientation(graph: MixedGraph, orientation: Orientation) -> Optional[Violation]:
    """Return the first problem found, or ``None`` if the orientation is total and consistent."""
    for e in sorted(orientation):
        if not (isinstance(e, int) and 0 <= e < graph.num_undirected):
            return Violation(e, "unknown edge")
    for e, (a, b) in enumerate(graph.undirected):
        if e not in orientation:
            return Violation(e, "unassigned edge")
        d = tuple(orientation[e])
        if len(d) != 2 or {d[0], d[1]} != {a, b} or d[0] == d[1]:
            return Violation(e, "endpoint mismatch")
    return None


def count_satisfied(graph: MixedGraph, orientation: Orientation,
                    requests: Sequence[Tuple[int, int]]) -> Tuple[int, List[bool]]:
    """Count requests admitting a directed source-target path under a total orientation."""
    bad = validate_orientation(graph, orientation)
    if bad is not None:
        raise ContractViolation(f"orientation invalid at undirected edge {bad.edge}: {bad.reason}")
    cache: Dict[int, Set[int]] = {}
    flags = []
    for s, t in requests:
        _check_vertex(graph, t)
        if s not in cache:
            cache[s] = reachable_set(graph, orientation, s)
        flags.append(t in cache[s])
    return sum(flags), flags


def find_undirected_cycle(graph: MixedGraph, removed: Iterable[int] = ()) -> Optional[List[int]]:
    """A vertex cycle in the simple undirected version minus ``removed``, or ``None``."""
    gone = set(removed)
    nbrs = graph.simple_neighbors()
    parent: Dict[int, int] = {}
    for root in range(graph.n):
        if root in gone or root in parent:
            continue
        parent[root] = -1
        stack = [root]
        while stack:
            v = stack.pop()
            for w in sorted(nbrs[v]):
                if w in gone or w == parent[v]:
                    continue
                if w in parent:
                    # walk both ends up to their common ancestor
                    path_v, x = [], v
                    anc_w, y = [], w
                    seen_v = {}
                    while x != -1:
                        seen_v[x] = len(path_v)
                        path_v.append(x)
                        x = parent[x]
                    while y not in seen_v:
                        anc_w.append(y)
                        y = parent[y]
                    return path_v[:seen_v[y] + 1] + anc_w[::-1]
                parent[w] = v
                stack.append(w)
    return None
