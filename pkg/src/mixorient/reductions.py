"""Instance generators: hardness-reduction constructions, grids and random instances."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import InputError
from .graph import MixedGraph, Orientation, Request
from .solvers.fixed_paths import FixedPathInstance


@dataclass
class GeneratedInstance:
    graph: MixedGraph
    requests: List[Request]
    paths: Optional[List[List[int]]] = None  # mandated paths, fixed-paths instances only
    metadata: Dict[str, str] = field(default_factory=dict)

    def fixed_path_instance(self) -> FixedPathInstance:
        if self.paths is None:
            raise InputError("instance carries no mandated paths")
        return FixedPathInstance(self.graph, self.requests, self.paths)


def _check_simple(n: int, edges, directed: bool) -> List[Tuple[int, int]]:
    seen = set()
    out = []
    for a, b in edges:
        a, b = int(a), int(b)
        if not (0 <= a < n and 0 <= b < n) or a == b:
            raise InputError(f"edge ({a}, {b}) invalid for a simple graph on {n} vertices")
        key = (a, b) if directed else (min(a, b), max(a, b))
        if key in seen:
            raise InputError(f"duplicate edge ({a}, {b})")
        seen.add(key)
        out.append(key)
    return out


def gen_from_independent_set(n: int, edges: Sequence[Tuple[int, int]]) -> GeneratedInstance:
    """Fixed-paths instance whose optimum equals the maximum independent set of ``(n, edges)``.

    Path ``p_i`` joins ``s_i = 2i`` to ``t_i = 2i + 1`` and meets every other
    path ``p_j`` in a four-vertex gadget ``(v_i, u_i, v_j, u_j)`` (``i < j``).
    Normally ``p_i`` runs ``v_i -> u_i`` and ``p_j`` runs ``v_j -> u_j`` on
    separate edges. For an edge ``{i, j}`` the gadget reroutes ``p_j`` along
    ``v_j, u_i, v_i, u_j``, so both paths need ``{v_i, u_i}`` in opposite
    directions.
    """
    edge_set = set(_check_simple(n, edges, directed=False))
    gadget: Dict[Tuple[int, int], Tuple[int, int, int, int]] = {}
    next_vertex = 2 * n
    for i, j in combinations(range(n), 2):
        gadget[(i, j)] = tuple(range(next_vertex, next_vertex + 4))
        next_vertex += 4

    paths = []
    for i in range(n):
        verts = [2 * i]
        for j in range(n):
            if j == i:
                continue
            a, b = min(i, j), max(i, j)
            v_a, u_a, v_b, u_b = gadget[(a, b)]
            if i == a:
                verts += [v_a, u_a]
            elif (a, b) in edge_set:
                verts += [v_b, u_a, v_a, u_b]
            else:
                verts += [v_b, u_b]
        verts.append(2 * i + 1)
        paths.append(verts)

    undirected, seen = [], set()
    for verts in paths:
        for x, y in zip(verts, verts[1:]):
            key = (min(x, y), max(x, y))
            if key not in seen:
                seen.add(key)
                undirected.append(key)
    graph = MixedGraph(next_vertex, [], undirected)
    requests = [Request(2 * i, 2 * i + 1) for i in range(n)]
    meta = {
        "kind": "independent-set-reduction",
        "source_vertices": str(n),
        "source_edges": " ".join(f"{a}-{b}" for a, b in sorted(edge_set)),
        "vertex_to_request": " ".join(f"{i}:{i}" for i in range(n)),
        "value_relation": "MIS(source) = OPT_fixed_paths(generated)",
    }
    return GeneratedInstance(graph, requests, paths, meta)


def _grid_id(r: int, c: int, cols: int) -> int:
    return r * cols + c


def gen_from_dicut(n: int, arcs: Sequence[Tuple[int, int]]) -> GeneratedInstance:
    """Mixed ``(2n - 1) x 3`` grid whose optimum equals the maximum directed cut of ``(n, arcs)``.

    Source vertex ``k`` sits at grid row ``2k``, column 0 (0-based). The
    column-0 vertices on odd rows send all their edges away from themselves,
    columns 1-2 form a clockwise directed cycle on their perimeter, and the
    only undirected edge at source vertex ``k`` leads to column 1. Its
    orientation encodes whether ``k`` is on the source side of the cut.
    """
    arcs = _check_simple(n, arcs, directed=True)
    rows, cols = max(2 * n - 1, 0), 3
    gid = lambda r, c: _grid_id(r, c, cols)  # noqa: E731
    directed, undirected = [], []
    for r in range(1, rows, 2):
        w = gid(r, 0)
        directed += [(w, gid(r - 1, 0)), (w, gid(r + 1, 0)), (w, gid(r, 1))]
    for r in range(0, rows, 2):
        undirected.append((gid(r, 0), gid(r, 1)))
    if rows == 1:
        directed.append((gid(0, 1), gid(0, 2)))
    elif rows > 1:
        directed.append((gid(0, 1), gid(0, 2)))
        directed += [(gid(r, 2), gid(r + 1, 2)) for r in range(rows - 1)]
        directed.append((gid(rows - 1, 2), gid(rows - 1, 1)))
        directed += [(gid(r + 1, 1), gid(r, 1)) for r in range(rows - 2, -1, -1)]
        directed += [(gid(r, 1), gid(r, 2)) for r in range(1, rows - 1)]
    graph = MixedGraph(rows * cols, directed, undirected)
    requests = [Request(gid(2 * u, 0), gid(2 * v, 0)) for u, v in arcs]
    meta = {
        "kind": "dicut-reduction",
        "source_vertices": str(n),
        "source_arcs": " ".join(f"{a}-{b}" for a, b in arcs),
        "grid": f"{rows}x{cols}",
        "vertex_to_grid": " ".join(f"{k}:{gid(2 * k, 0)}" for k in range(n)),
        "value_relation": "MaxDicut(source) = OPT(generated)",
    }
    return GeneratedInstance(graph, requests, None, meta)


def grid_edges(rows: int, cols: int) -> List[Tuple[int, int]]:
    """Horizontal edges row by row, then vertical edges row by row."""
    horizontal = [(_grid_id(r, c, cols), _grid_id(r, c + 1, cols)) for r in range(rows) for c in range(cols - 1)]
    vertical = [(_grid_id(r, c, cols), _grid_id(r + 1, c, cols)) for r in range(rows - 1) for c in range(cols)]
    return horizontal + vertical


def gen_grid_full_orientation(rows: int, cols: int,
                              requests: Optional[Sequence[Tuple[int, int]]] = None):
    """Undirected grid plus a strongly connected orientation of it.

    The perimeter becomes a clockwise cycle, interior horizontal edges point
    right and interior vertical edges point down. ``requests`` defaults to
    every ordered pair of distinct vertices.
    """
    if rows < 2 or cols < 2:
        raise InputError(f"{rows}x{cols} grid is a path; paths need a dedicated algorithm, not a full orientation")
    edges = grid_edges(rows, cols)
    orientation: Orientation = {}
    for e, (a, b) in enumerate(edges):
        (ra, ca), (rb, cb) = divmod(a, cols), divmod(b, cols)
        if ra == rb:  # horizontal, a is left of b
            forward = ra != rows - 1  # bottom row runs right to left
        else:         # vertical, a is above b
            forward = ca != 0  # left column runs upwards
        orientation[e] = (a, b) if forward else (b, a)
    graph = MixedGraph(rows * cols, [], edges)
    if requests is None:
        requests = [(s, t) for s in range(graph.n) for t in range(graph.n) if s != t]
    meta = {"kind": "grid-full", "grid": f"{rows}x{cols}",
            "value_relation": "all requests satisfied by the emitted orientation"}
    return GeneratedInstance(graph, [Request(s, t) for s, t in requests], None, meta), orientation


def gen_random_instance(n: int, p_directed: float, p_undirected: float, request_count: int,
                        seed: int) -> GeneratedInstance:
    """Seeded random mixed graph with distinct uniformly sampled requests.

    For every vertex pair ``u < v`` an undirected edge appears with
    probability ``p_undirected`` and, independently, a directed edge of
    random direction with probability ``p_directed``.
    """
    for name, p in (("p_directed", p_directed), ("p_undirected", p_undirected)):
        if not 0.0 <= p <= 1.0:
            raise InputError(f"{name} must lie in [0, 1], got {p}")
    pairs = [(s, t) for s in range(n) for t in range(n) if s != t]
    if not 0 <= request_count <= len(pairs):
        raise InputError(f"cannot sample {request_count} distinct requests on {n} vertices")
    rng = np.random.default_rng(seed)
    directed, undirected = [], []
    for u, v in combinations(range(n), 2):
        draw_u, draw_d, flip = rng.random(3)
        if draw_u < p_undirected:
            undirected.append((u, v))
        if draw_d < p_directed:
            directed.append((u, v) if flip < 0.5 else (v, u))
    picks = rng.choice(len(pairs), size=request_count, replace=False) if request_count else []
    requests = [Request(*pairs[int(k)]) for k in picks]
    meta = {"kind": "random", "n": str(n), "p_directed": repr(p_directed),
            "p_undirected": repr(p_undirected), "requests": str(request_count), "seed": str(seed)}
    return GeneratedInstance(MixedGraph(n, directed, undirected), requests, None, meta)


def gen_random_forest(n: int, p_directed: float, request_count: int, seed: int,
                      p_edge: float = 1.0) -> GeneratedInstance:
    """Seeded random mixed forest: vertex ``v > 0`` attaches to a random earlier vertex with probability ``p_edge``."""
    rng = np.random.default_rng(seed)
    directed, undirected = [], []
    for v in range(1, n):
        parent = int(rng.integers(v))
        keep, draw_d, flip = rng.random(3)
        if keep >= p_edge:
            continue
        if draw_d < p_directed:
            directed.append((parent, v) if flip < 0.5 else (v, parent))
        else:
            undirected.append((parent, v))
    pairs = [(s, t) for s in range(n) for t in range(n) if s != t]
    request_count = min(request_count, len(pairs))
    picks = rng.choice(len(pairs), size=request_count, replace=False) if request_count else []
    meta = {"kind": "random-forest", "n": str(n), "seed": str(seed)}
    return GeneratedInstance(MixedGraph(n, directed, undirected),
                             [Request(*pairs[int(k)]) for k in picks], None, meta)


def gen_random_acyclic(n: int, p_tree_edge: float, p_directed: float, request_count: int,
                       seed: int) -> GeneratedInstance:
    """Seeded random mixed acyclic graph with routable requests.

    The undirected edges form a random forest (vertex ``v`` joins a random
    earlier vertex with probability ``p_tree_edge``). Directed edges join
    vertices of different trees and always point from the earlier tree to
    the later one in a random order of the trees, so no mixed cycle exists.
    Requests are distinct pairs sampled uniformly among the routable ones
    (fewer if not enough exist).
    """
    from .pathfinding import shortest_mixed_path

    rng = np.random.default_rng(seed)
    undirected = []
    comp = list(range(n))
    for v in range(1, n):
        parent = int(rng.integers(v))
        if rng.random() < p_tree_edge:
            undirected.append((parent, v))
            old, new = comp[v], comp[parent]
            comp = [new if c == old else c for c in comp]
    labels = sorted(set(comp))
    rank = {c: int(r) for c, r in zip(labels, rng.permutation(len(labels)))}
    directed = []
    for u, v in combinations(range(n), 2):
        if comp[u] != comp[v] and rng.random() < p_directed:
            directed.append((u, v) if rank[comp[u]] < rank[comp[v]] else (v, u))
    graph = MixedGraph(n, directed, undirected)
    pairs = [(s, t) for s in range(n) for t in range(n)
             if s != t and shortest_mixed_path(graph, s, t) is not None]
    count = min(request_count, len(pairs))
    picks = rng.choice(len(pairs), size=count, replace=False) if count else []
    meta = {"kind": "random-acyclic", "n": str(n), "seed": str(seed)}
    return GeneratedInstance(graph, [Request(*pairs[int(k)]) for k in picks], None, meta)
