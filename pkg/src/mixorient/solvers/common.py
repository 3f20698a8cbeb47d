"""Result type and helpers shared by the solvers."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple

from ..errors import InvariantError, PreconditionError
from ..graph import MixedGraph, Orientation, count_satisfied
from ..preprocess import find_proper_cycle


@dataclass
class SolveResult:
    algorithm: str
    orientation: Orientation
    satisfied: List[int]
    routable: int
    unroutable: List[int]
    certificate: Dict[str, object] = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def count(self) -> int:
        return len(self.satisfied)


def ceil_root(value: int, k: int) -> int:
    """Smallest integer ``c >= 0`` with ``c**k >= value``."""
    if value <= 0:
        return 0
    c = max(0, int(round(value ** (1.0 / k))) - 1)
    while c ** k < value:
        c += 1
    while c > 0 and (c - 1) ** k >= value:
        c -= 1
    return c


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def log2_levels(size: int) -> int:
    """Depth bound of a halving recursion on ``size`` items."""
    return 0 if size <= 0 else int(math.floor(math.log2(size))) + 1


def require_acyclic(graph: MixedGraph) -> None:
    cycle = find_proper_cycle(graph)
    if cycle is not None:
        raise PreconditionError(
            f"graph contains a mixed cycle through vertices {cycle.vertices}; contract cycles first")


def finish(algorithm: str, graph: MixedGraph, requests: Sequence[Tuple[int, int]],
           orientation: Orientation, claimed: Iterable[int], routable: int,
           unroutable: List[int], certificate: Dict[str, object], started: float) -> SolveResult:
    """Re-verify by reachability and package the result.

    ``claimed`` are the request ids the solver's own accounting guarantees;
    they must all be satisfied under the returned orientation.
    """
    _, flags = count_satisfied(graph, orientation, requests)
    satisfied = [i for i, ok in enumerate(flags) if ok]
    missing = set(claimed) - set(satisfied)
    if missing:
        raise InvariantError(f"{algorithm}: claimed requests {sorted(missing)} are not satisfied")
    return SolveResult(algorithm, orientation, satisfied, routable, list(unroutable),
                       certificate, time.perf_counter() - started)
