"""Exhaustive optimum by enumerating every orientation.

Reachability for a whole block of orientations is computed at once:
each vertex's reachable set is a row of 64-bit words, one column per
orientation, closed transitively with Warshall's algorithm on bitsets.
"""

from __future__ import annotations

import os
import time
from typing import Optional, Sequence, Tuple

import numpy as np

from ..errors import CapExceeded, InputError
from ..graph import MixedGraph, default_direction
from ..pathfinding import route_all
from .common import finish

DEFAULT_CAP = 20
CAP_ENV = "MIXORIENT_EXACT_CAP"
BLOCK = 1 << 12


def exact_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_CAP
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{CAP_ENV} must be an integer, got {raw!r}") from None


def orientation_from_index(graph: MixedGraph, index: int):
    """Bit ``m-1-e`` of ``index`` set means edge ``e`` runs higher id -> lower id."""
    m = graph.num_undirected
    out = {}
    for e in range(m):
        lo, hi = default_direction(graph, e)
        out[e] = (hi, lo) if (index >> (m - 1 - e)) & 1 else (lo, hi)
    return out


def satisfied_counts(graph: MixedGraph, requests: Sequence[Tuple[int, int]], start: int, stop: int) -> np.ndarray:
    """Number of satisfied requests for orientation indices ``start..stop-1``."""
    n, m = graph.n, graph.num_undirected
    words = max(1, (n + 63) // 64)
    width = stop - start
    idx = np.arange(start, stop, dtype=np.int64)
    reach = np.zeros((n, words, width), dtype=np.uint64)
    one = np.uint64(1)

    def set_bit(row, target, mask=None):
        word, bit = divmod(target, 64)
        value = one << np.uint64(bit)
        if mask is None:
            reach[row, word, :] |= value
        else:
            reach[row, word, :] |= np.where(mask, value, np.uint64(0))

    for v in range(n):
        set_bit(v, v)
    for a, b in graph.directed:
        set_bit(a, b)
    for e in range(m):
        lo, hi = default_direction(graph, e)
        flipped = ((idx >> (m - 1 - e)) & 1).astype(bool)
        set_bit(lo, hi, ~flipped)
        set_bit(hi, lo, flipped)
    for k in range(n):
        word, bit = divmod(k, 64)
        has_k = ((reach[:, word, :] >> np.uint64(bit)) & one).astype(bool)
        reach |= np.where(has_k[:, None, :], reach[k][None, :, :], np.uint64(0))
    counts = np.zeros(width, dtype=np.int64)
    for s, t in requests:
        word, bit = divmod(t, 64)
        counts += ((reach[s, word, :] >> np.uint64(bit)) & one).astype(np.int64)
    return counts


def solve_exact(graph: MixedGraph, requests: Sequence[Tuple[int, int]], cap: Optional[int] = None):
    """Maximum number of satisfiable requests by full enumeration.

    Ties go to the lexicographically smallest bit vector, edge 0 first,
    where bit 0 means lower id -> higher id. Refuses instances with more
    than ``cap`` undirected edges (default 20, overridable through the
    ``MIXORIENT_EXACT_CAP`` environment variable).
    """
    started = time.perf_counter()
    cap = exact_cap() if cap is None else cap
    m = graph.num_undirected
    if m > cap:
        raise CapExceeded(f"exact solver refuses {m} undirected edges (cap {cap})")
    for s, t in requests:
        if not (0 <= s < graph.n and 0 <= t < graph.n):
            raise InputError(f"request ({s}, {t}) outside 0..{graph.n - 1}")
    total = 1 << m
    best_count, best_index = -1, 0
    if graph.n == 0:
        best_count = 0
    else:
        for start in range(0, total, BLOCK):
            counts = satisfied_counts(graph, requests, start, min(total, start + BLOCK))
            k = int(np.argmax(counts))
            if counts[k] > best_count:
                best_count, best_index = int(counts[k]), start + k
    orientation = orientation_from_index(graph, best_index)
    cert = {"optimum": best_count, "enumerated": total, "best_index": best_index}
    paths, unroutable = route_all(graph, requests)
    result = finish("exact", graph, requests, orientation, [], len(paths), unroutable, cert, started)
    if result.count != best_count:
        raise AssertionError("bitset enumeration and reachability disagree on the optimum")
    return result


def exact_optimum(graph: MixedGraph, requests: Sequence[Tuple[int, int]], cap: Optional[int] = None) -> int:
    return solve_exact(graph, requests, cap).count
