"""Independent brute-force oracles shared by the tests.

None of these reuse library search code: reachability is a boolean
matrix closure, optima enumerate every orientation with itertools.
"""

import itertools

import numpy as np
import pytest

from mixorient.graph import MixedGraph


def closure_reach(n, arcs):
    """Reflexive transitive closure by repeated boolean squaring."""
    m = np.eye(n, dtype=bool)
    for a, b in arcs:
        m[a, b] = True
    while True:
        nxt = (m.astype(np.int64) @ m.astype(np.int64)) > 0
        if (nxt == m).all():
            return m
        m = nxt


def oriented_arcs(graph, orientation):
    return list(graph.directed) + [orientation[e] for e in range(graph.num_undirected)]


def oracle_satisfied(graph, orientation, requests):
    reach = closure_reach(graph.n, oriented_arcs(graph, orientation))
    return [bool(reach[s, t]) for s, t in requests]


def oracle_optimum(graph, requests):
    best = 0
    for bits in itertools.product((0, 1), repeat=graph.num_undirected):
        orient = {e: (edge if b == 0 else edge[::-1]) for e, (edge, b) in enumerate(zip(graph.undirected, bits))}
        best = max(best, sum(oracle_satisfied(graph, orient, requests)))
    return best


def oracle_mis(n, edges):
    best = 0
    for mask in range(1 << n):
        if all(not (mask >> a & 1 and mask >> b & 1) for a, b in edges):
            best = max(best, bin(mask).count("1"))
    return best


def oracle_dicut(n, arcs):
    return max(sum(1 for a, b in arcs if mask >> a & 1 and not mask >> b & 1) for mask in range(1 << n))


def oracle_star_optimum(star):
    """Largest number of unblocked local paths satisfiable by one assignment of the free spokes."""
    from mixorient.local_orient import IN, OUT

    free = [s.ref for s in star.free_spokes]
    best = 0
    for choice in itertools.product((IN, OUT), repeat=len(free)):
        decided = dict(zip(free, choice))
        got = 0
        for lp in star.local_paths:
            if all((star.spokes[r].fixed or decided[r]) == need for r, need in lp.requirements):
                got += 1
        best = max(best, got)
    return best


def all_simple_path_lengths(graph, s, t):
    """Shortest mixed path length by enumerating all simple paths (no BFS)."""
    moves = [[] for _ in range(graph.n)]
    for a, b in graph.directed:
        moves[a].append(b)
    for a, b in graph.undirected:
        moves[a].append(b)
        moves[b].append(a)
    best = None

    def walk(v, seen, depth):
        nonlocal best
        if v == t:
            best = depth if best is None else min(best, depth)
            return
        for w in moves[v]:
            if w not in seen:
                seen.add(w)
                walk(w, seen, depth + 1)
                seen.remove(w)

    walk(s, {s}, 0)
    return best


def random_mixed(rng, n, p_d, p_u):
    directed, undirected = [], []
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < p_u:
            undirected.append((u, v))
        if rng.random() < p_d:
            directed.append((u, v) if rng.random() < 0.5 else (v, u))
    return MixedGraph(n, directed, undirected)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_LINES = []


def record_criterion(number, title, ok, detail):
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
