"""Reduction of an instance to one on a mixed acyclic graph.

A *proper cycle* is a closed walk with pairwise distinct edges in which every
directed edge is traversed from tail to head. Orienting the undirected edges
of such a cycle along the walk makes all its vertices mutually reachable, so
the cycle can be merged into a single supervertex without changing which
requests are satisfiable.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ContractViolation
from .graph import (DIRECTED, UNDIRECTED, EdgeRef, MixedGraph, Orientation, Request,
                    validate_orientation)


@dataclass(frozen=True)
class ProperCycle:
    """Closed walk as a list of ``(edge, from, to)`` steps."""

    steps: Tuple[Tuple[EdgeRef, int, int], ...]

    @property
    def vertices(self) -> List[int]:
        return [frm for _, frm, _ in self.steps]

    def __len__(self):
        return len(self.steps)


@dataclass
class ContractionRecord:
    original: MixedGraph
    vertex_map: List[int]
    internal_orientation: Orientation = field(default_factory=dict)
    # steps use original edge ids
    contraction_steps: List[ProperCycle] = field(default_factory=list)
    auto_satisfied: List[int] = field(default_factory=list)
    # contracted edge id -> original edge id
    directed_origin: List[int] = field(default_factory=list)
    undirected_origin: List[int] = field(default_factory=list)

    @property
    def is_identity(self) -> bool:
        return not self.contraction_steps


def _mixed_path(graph: MixedGraph, src: int, dst: int, banned: EdgeRef) -> Optional[list]:
    """BFS path ``src -> dst`` avoiding ``banned``; list of ``(ref, from, to)``."""
    parent = {src: None}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if v == dst:
            break
        for ref, w in graph.out[v]:
            if ref == banned or w in parent:
                continue
            parent[w] = (ref, v)
            queue.append(w)
    if dst not in parent:
        return None
    steps = []
    v = dst
    while parent[v] is not None:
        ref, u = parent[v]
        steps.append((ref, u, v))
        v = u
    return steps[::-1]


def find_proper_cycle(graph: MixedGraph) -> Optional[ProperCycle]:
    """First proper cycle found scanning directed then undirected edges by id.

    For an edge ``e = (a, b)`` we look for a mixed path from ``b`` back to
    ``a`` that avoids ``e``; undirected edges are tried in both directions.
    A BFS path is vertex-simple, so the closed walk has distinct edges.
    """
    candidates = [(EdgeRef(DIRECTED, i), a, b) for i, (a, b) in enumerate(graph.directed)]
    for i, (a, b) in enumerate(graph.undirected):
        ref = EdgeRef(UNDIRECTED, i)
        candidates.append((ref, a, b))
        candidates.append((ref, b, a))
    for ref, a, b in candidates:
        back = _mixed_path(graph, b, a, ref)
        if back is not None:
            return ProperCycle(tuple([(ref, a, b)] + back))
    return None


def contract_cycles(graph: MixedGraph, requests: Sequence[Tuple[int, int]]):
    """Contract proper cycles until none is left.

    Returns ``(contracted_graph, remapped_requests, record)``. Remapped
    requests keep their ids (list positions); those whose endpoints land on
    the same supervertex are listed in ``record.auto_satisfied``.
    """
    rep = list(range(graph.n))  # original vertex -> current representative
    internal: Orientation = {}
    steps: List[ProperCycle] = []
    # current multigraph in original labels, edges carry original ids
    d_edges: Dict[int, Tuple[int, int]] = dict(enumerate(graph.directed))
    u_edges: Dict[int, Tuple[int, int]] = dict(enumerate(graph.undirected))

    while True:
        alive = sorted(set(rep))
        index = {v: i for i, v in enumerate(alive)}
        d_ids, u_ids = sorted(d_edges), sorted(u_edges)
        current = MixedGraph(
            len(alive),
            [(index[rep[a]], index[rep[b]]) for a, b in (d_edges[i] for i in d_ids)],
            [(index[rep[a]], index[rep[b]]) for a, b in (u_edges[i] for i in u_ids)],
        )
        cycle = find_proper_cycle(current)
        if cycle is None:
            break
        orig_steps = []
        for ref, frm, to in cycle.steps:
            oid = d_ids[ref.id] if ref.kind == DIRECTED else u_ids[ref.id]
            orig_steps.append((EdgeRef(ref.kind, oid), alive[frm], alive[to]))
            if ref.kind == UNDIRECTED:
                a, b = graph.undirected[oid]
                internal[oid] = (a, b) if rep[a] == alive[frm] else (b, a)
        steps.append(ProperCycle(tuple(orig_steps)))

        merged = {alive[v] for v in cycle.vertices}
        new_rep = min(merged)
        rep = [new_rep if r in merged else r for r in rep]
        # edges that collapsed into self-loops disappear
        for i in [i for i, (a, b) in d_edges.items() if rep[a] == rep[b]]:
            del d_edges[i]
        for i in [i for i, (a, b) in u_edges.items() if rep[a] == rep[b]]:
            a, b = graph.undirected[i]
            if i not in internal:
                internal[i] = (a, b) if a < b else (b, a)
            del u_edges[i]

    alive = sorted(set(rep))
    index = {v: i for i, v in enumerate(alive)}
    vertex_map = [index[r] for r in rep]
    d_ids, u_ids = sorted(d_edges), sorted(u_edges)
    contracted = MixedGraph(
        len(alive),
        [(vertex_map[graph.directed[i][0]], vertex_map[graph.directed[i][1]]) for i in d_ids],
        [(vertex_map[graph.undirected[i][0]], vertex_map[graph.undirected[i][1]]) for i in u_ids],
    )
    remapped = [Request(vertex_map[s], vertex_map[t]) for s, t in requests]
    auto = [i for i, (s, t) in enumerate(remapped) if s == t]
    record = ContractionRecord(
        original=graph,
        vertex_map=vertex_map,
        internal_orientation=internal,
        contraction_steps=steps,
        auto_satisfied=auto,
        directed_origin=d_ids,
        undirected_origin=u_ids,
    )
    return contracted, remapped, record


def replay_contraction(record: ContractionRecord) -> MixedGraph:
    """Rebuild the contracted graph from the original and the recorded steps."""
    graph = record.original
    rep = list(range(graph.n))
    for cycle in record.contraction_steps:
        merged = {rep[frm] for _, frm, _ in cycle.steps}
        for _, frm, to in cycle.steps:
            if rep[frm] not in merged or rep[to] not in merged:
                raise ContractViolation("recorded step leaves the merged vertex set")
        new_rep = min(merged)
        rep = [new_rep if r in merged else r for r in rep]
    alive = sorted(set(rep))
    index = {v: i for i, v in enumerate(alive)}
    return MixedGraph(
        len(alive),
        [(index[rep[a]], index[rep[b]]) for a, b in graph.directed if rep[a] != rep[b]],
        [(index[rep[a]], index[rep[b]]) for a, b in graph.undirected if rep[a] != rep[b]],
    )


def lift_orientation(record: ContractionRecord, orientation: Orientation) -> Orientation:
    """Pull an orientation of the contracted graph back to the original graph."""
    original = record.original
    if len(orientation) != len(record.undirected_origin):
        raise ContractViolation(
            f"orientation has {len(orientation)} edges, contracted graph has "
            f"{len(record.undirected_origin)}")
    lifted: Orientation = dict(record.internal_orientation)
    vmap = record.vertex_map
    for cid, oid in enumerate(record.undirected_origin):
        if cid not in orientation:
            raise ContractViolation(f"contracted edge {cid} is unassigned")
        frm, to = orientation[cid]
        a, b = original.undirected[oid]
        if (vmap[a], vmap[b]) == (frm, to):
            lifted[oid] = (a, b)
        elif (vmap[b], vmap[a]) == (frm, to):
            lifted[oid] = (b, a)
        else:
            raise ContractViolation(f"contracted edge {cid} direction {frm}->{to} does not match the record")
    bad = validate_orientation(original, lifted)
    if bad is not None:
        raise ContractViolation(f"lifted orientation invalid at edge {bad.edge}: {bad.reason}")
    return lifted


def is_acyclic(graph: MixedGraph) -> bool:
    return find_proper_cycle(graph) is None
