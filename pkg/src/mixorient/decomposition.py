"""Tree decompositions, tree centroids and feedback vertex sets.

All structures refer to the simple undirected version of a mixed graph:
edge directions are ignored and parallel edges collapse.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Set

from .errors import ContractViolation, ValidationError
from .graph import MixedGraph, find_undirected_cycle


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple            # tuple of frozensets
    tree: tuple            # adjacency: tuple of frozensets of bag indices

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    @property
    def size(self) -> int:
        return len(self.bags)

    @classmethod
    def from_lists(cls, bags: Sequence[Iterable[int]], tree_edges: Iterable[Sequence[int]]):
        adj: List[Set[int]] = [set() for _ in bags]
        for a, b in tree_edges:
            if not (0 <= a < len(bags) and 0 <= b < len(bags)) or a == b:
                raise ValidationError(f"tree edge ({a}, {b}) does not join two distinct bags")
            adj[a].add(b)
            adj[b].add(a)
        return cls(tuple(frozenset(b) for b in bags), tuple(frozenset(x) for x in adj))

    @property
    def tree_edges(self) -> List[tuple]:
        return sorted((a, b) for a, nb in enumerate(self.tree) for b in nb if a < b)

    def validate(self, graph: MixedGraph) -> None:
        """Raise :class:`ValidationError` naming the first violated property."""
        n_bags = len(self.bags)
        if n_bags == 0:
            if graph.n:
                raise ValidationError("property (1): no bags but the graph has vertices")
            return
        if len(self.tree_edges) != n_bags - 1 or len(_components(self.tree, range(n_bags))) != 1:
            raise ValidationError("the bag graph is not a tree")
        covered = set().union(*self.bags)
        if covered != set(range(graph.n)):
            missing = sorted(set(range(graph.n)) - covered)
            extra = sorted(covered - set(range(graph.n)))
            raise ValidationError(f"property (1): bags miss vertices {missing} or hold unknown {extra}")
        for a, b in graph.directed + graph.undirected:
            if not any(a in bag and b in bag for bag in self.bags):
                raise ValidationError(f"property (2): no bag contains both endpoints of edge ({a}, {b})")
        for v in range(graph.n):
            holders = [i for i, bag in enumerate(self.bags) if v in bag]
            if len(_components(self.tree, holders)) != 1:
                raise ValidationError(f"property (3): bags containing vertex {v} are not connected")


@dataclass(frozen=True)
class FeedbackVertexSet:
    vertices: tuple
    method: str  # "heuristic" | "exact" | "provided"

    def __len__(self):
        return len(self.vertices)


def _components(adj, nodes) -> List[List[int]]:
    """Connected components of the subgraph of ``adj`` induced by ``nodes``."""
    nodes = set(nodes)
    seen: Set[int] = set()
    comps = []
    for start in sorted(nodes):
        if start in seen:
            continue
        comp, stack = [], [start]
        seen.add(start)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y in nodes and y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def min_fill_ordering(nbrs: Sequence[Set[int]]) -> List[int]:
    """Elimination order choosing, at each step, the vertex adding fewest fill edges (ties: lowest id)."""
    adj = {v: set(nb) for v, nb in enumerate(nbrs)}
    order = []
    while adj:
        best, best_fill = None, None
        for v in sorted(adj):
            nb = adj[v]
            fill = sum(1 for a, b in combinations(sorted(nb), 2) if b not in adj[a])
            if best_fill is None or fill < best_fill:
                best, best_fill = v, fill
        nb = adj.pop(best)
        for a, b in combinations(nb, 2):
            adj[a].add(b)
            adj[b].add(a)
        for a in nb:
            adj[a].discard(best)
        order.append(best)
    return order


def decomposition_from_ordering(n: int, nbrs: Sequence[Set[int]], order: Sequence[int]) -> TreeDecomposition:
    """One bag per eliminated vertex; separate components are chained together."""
    adj = {v: set(nb) for v, nb in enumerate(nbrs)}
    pos = {v: i for i, v in enumerate(order)}
    bags = []
    parent: List[Optional[int]] = []
    for v in order:
        nb = adj.pop(v)
        bags.append(frozenset(nb | {v}))
        for a, b in combinations(nb, 2):
            adj[a].add(b)
            adj[b].add(a)
        for a in nb:
            adj[a].discard(v)
        # parent bag = bag of the earliest eliminated remaining neighbour
        parent.append(pos[min(nb, key=pos.__getitem__)] if nb else None)
    edges = [(i, p) for i, p in enumerate(parent) if p is not None]
    roots = [i for i, p in enumerate(parent) if p is None]
    edges += list(zip(roots, roots[1:]))
    return TreeDecomposition.from_lists(bags, edges)


def tree_decomposition(graph: MixedGraph, provided: Optional[TreeDecomposition] = None) -> TreeDecomposition:
    """Min-fill heuristic decomposition, or validate and return ``provided``."""
    if provided is not None:
        provided.validate(graph)
        return provided
    nbrs = graph.simple_neighbors()
    td = decomposition_from_ordering(graph.n, nbrs, min_fill_ordering(nbrs))
    td.validate(graph)
    return td


def ordering_width(nbrs: Sequence[Set[int]], order: Sequence[int]) -> int:
    adj = {v: set(nb) for v, nb in enumerate(nbrs)}
    width = -1
    for v in order:
        nb = adj.pop(v)
        width = max(width, len(nb))
        for a, b in combinations(nb, 2):
            adj[a].add(b)
            adj[b].add(a)
        for a in nb:
            adj[a].discard(v)
    return width


def centroid(tree, nodes: Iterable[int]) -> int:
    """Node of the subtree induced by ``nodes`` whose removal leaves parts of at most half its size.

    ``tree`` is any adjacency indexable by node. Ties go to the lowest node.
    """
    nodes = sorted(set(nodes))
    if not nodes:
        raise ContractViolation("centroid of an empty node set")
    if len(_components(tree, nodes)) != 1:
        raise ContractViolation("centroid requires a connected node subset")
    size = len(nodes)
    inside = set(nodes)
    for c in nodes:
        rest = inside - {c}
        if all(2 * len(comp) <= size for comp in _components(tree, rest)):
            return c
    raise ContractViolation("node subset does not induce a tree")


def fvs_is_valid(graph: MixedGraph, vertices: Iterable[int]) -> bool:
    return find_undirected_cycle(graph, vertices) is None


def _heuristic_fvs(graph: MixedGraph) -> List[int]:
    nbrs = {v: set(nb) for v, nb in enumerate(graph.simple_neighbors())}
    chosen = []
    while True:
        stripped = True
        while stripped:
            stripped = False
            for v in [v for v, nb in nbrs.items() if len(nb) <= 1]:
                for w in nbrs.pop(v):
                    nbrs[w].discard(v)
                stripped = True
        if not nbrs:
            return chosen
        v = max(sorted(nbrs), key=lambda x: len(nbrs[x]))
        chosen.append(v)
        for w in nbrs.pop(v):
            nbrs[w].discard(v)


def _exact_fvs(graph: MixedGraph) -> List[int]:
    for k in range(graph.n + 1):
        for subset in combinations(range(graph.n), k):
            if fvs_is_valid(graph, subset):
                return list(subset)
    raise AssertionError("unreachable: the full vertex set is always a feedback vertex set")


def feedback_vertex_set(graph: MixedGraph, mode: str = "heuristic",
                        provided: Optional[Sequence[int]] = None) -> FeedbackVertexSet:
    """Vertex set whose deletion leaves the undirected version a forest.

    ``mode`` is ``"heuristic"`` (peel degree <= 1 vertices, take the max
    degree vertex, repeat), ``"exact"`` (smallest set by enumeration, n <= 20)
    or ``"provided"``.
    """
    if mode == "provided":
        if provided is None:
            raise ContractViolation("provided mode needs a vertex set")
        vertices = list(dict.fromkeys(int(v) for v in provided))
        for v in vertices:
            if not 0 <= v < graph.n:
                raise ValidationError(f"feedback vertex {v} outside 0..{graph.n - 1}")
        cycle = find_undirected_cycle(graph, vertices)
        if cycle is not None:
            raise ValidationError(f"not a feedback vertex set: cycle {cycle} survives")
    elif mode == "heuristic":
        vertices = _heuristic_fvs(graph)
    elif mode == "exact":
        if graph.n > 20:
            raise ContractViolation("exact feedback vertex set limited to n <= 20")
        vertices = _exact_fvs(graph)
    else:
        raise ContractViolation(f"unknown feedback vertex set mode {mode!r}")
    if not fvs_is_valid(graph, vertices):
        raise AssertionError("feedback vertex set leaves a cycle")
    return FeedbackVertexSet(tuple(vertices), mode)


def map_decomposition(td: TreeDecomposition, vertex_map: Sequence[int]) -> TreeDecomposition:
    """Image of a decomposition under a vertex contraction map."""
    bags = [frozenset(vertex_map[v] for v in bag) for bag in td.bags]
    return TreeDecomposition(tuple(bags), td.tree)


def component_vertex_sets(nbrs: Dict[int, Set[int]] | Sequence[Set[int]], nodes: Iterable[int]) -> List[List[int]]:
    return _components(nbrs, nodes)
