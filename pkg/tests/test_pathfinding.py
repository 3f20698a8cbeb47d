from itertools import combinations

from hypothesis import given, settings, strategies as st

from conftest import all_simple_path_lengths, random_mixed
from mixorient.graph import DIRECTED, UNDIRECTED, EdgeRef, MixedGraph
from mixorient.pathfinding import (
    RoutedPath, conflict_degrees, in_conflict, path_from_vertices, route_all, shortest_mixed_path,
)


def test_same_endpoints_give_empty_path():
    p = shortest_mixed_path(MixedGraph(2, [], [(0, 1)]), 1, 1)
    assert len(p) == 0 and p.vertices == (1,)


def test_unique_mixed_path():
    p = shortest_mixed_path(MixedGraph(3, [(0, 1)], [(1, 2)]), 0, 2)
    assert p.vertices == (0, 1, 2)
    assert [ref.kind for ref, _, _ in p.steps] == [DIRECTED, UNDIRECTED]


def test_paths_are_valid_and_shortest(rng):
    for _ in range(60):
        n = int(rng.integers(2, 9))
        g = random_mixed(rng, n, 0.25, 0.2)
        for s in range(n):
            for t in range(n):
                if s == t:
                    continue
                p = shortest_mixed_path(g, s, t)
                best = all_simple_path_lengths(g, s, t)
                if best is None:
                    assert p is None
                    continue
                assert len(p) == best and p.vertices[0] == s and p.vertices[-1] == t
                for ref, frm, to in p.steps:
                    a, b = g.endpoints(ref)
                    assert (frm, to) == (a, b) or (ref.kind == UNDIRECTED and (to, frm) == (a, b))


def test_adjacent_requests_route_in_one_step():
    g = MixedGraph(4, [(0, 1)], [(1, 2), (2, 3)])
    paths, bad = route_all(g, [(0, 1), (2, 1), (3, 2)])
    assert not bad and [len(p) for p in paths] == [1, 1, 1]


def test_request_against_directed_bridge_is_unroutable():
    g = MixedGraph(3, [(0, 1)], [(1, 2)])
    paths, bad = route_all(g, [(2, 0), (0, 2), (1, 1)])
    assert bad == [0] and [p.request for p in paths] == [1]


def test_route_all_partition_matches_single_calls(rng):
    g = random_mixed(rng, 10, 0.15, 0.15)
    reqs = [(int(rng.integers(10)), int(rng.integers(10))) for _ in range(30)]
    paths, bad = route_all(g, reqs)
    routed = {p.request: p for p in paths}
    for i, (s, t) in enumerate(reqs):
        single = shortest_mixed_path(g, s, t, i)
        if s == t:
            assert i not in routed and i not in bad
        elif single is None:
            assert i in bad
        else:
            assert routed[i] == single


def _path(graph, verts, req=0):
    return path_from_vertices(graph, verts, req)


def test_conflict_witness():
    g = MixedGraph(3, [], [(0, 1), (1, 2)])
    w = in_conflict(_path(g, [0, 1, 2]), _path(g, [2, 1]))
    assert w.edge == 1 and w.first == (1, 2) and w.second == (2, 1)
    assert in_conflict(_path(g, [0, 1]), _path(g, [1, 2])) is None


def test_shared_directed_edge_is_not_a_conflict():
    g = MixedGraph(3, [(0, 1)], [(1, 2)])
    assert in_conflict(_path(g, [0, 1, 2]), _path(g, [0, 1])) is None


def test_disjoint_paths_have_zero_degree():
    g = MixedGraph(6, [], [(0, 1), (2, 3), (4, 5)])
    degrees, pairs = conflict_degrees([_path(g, [0, 1], 0), _path(g, [3, 2], 1), _path(g, [4, 5], 2)])
    assert degrees == [0, 0, 0] and pairs == []


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.integers(0, 12))
def test_split_edge_degrees(k, forward):
    forward = min(forward, k)
    g = MixedGraph(2, [], [(0, 1)])
    paths = [_path(g, [0, 1] if i < forward else [1, 0], i) for i in range(k)]
    degrees, pairs = conflict_degrees(paths)
    assert degrees == [k - forward] * forward + [forward] * (k - forward)
    assert len(pairs) == forward * (k - forward)


def test_conflicts_match_pairwise_scan(rng):
    for _ in range(30):
        n = 9
        g = random_mixed(rng, n, 0.1, 0.3)
        reqs = [(int(rng.integers(n)), int(rng.integers(n))) for _ in range(10)]
        paths, _ = route_all(g, reqs)
        degrees, pairs = conflict_degrees(paths)
        expected = []
        for i, j in combinations(range(len(paths)), 2):
            a, b = paths[i], paths[j]
            shared = [(ra.id, fa, ta, fb, tb) for ra, fa, ta in a.steps for rb, fb, tb in b.steps
                      if ra == rb and ra.kind == UNDIRECTED]
            if any((fa, ta) != (fb, tb) for _, fa, ta, fb, tb in shared):
                expected.append((i, j))
            assert (in_conflict(a, b) is not None) == ((i, j) in expected)
        assert pairs == expected
        perm = list(rng.permutation(len(paths)))
        shuffled, _ = conflict_degrees([paths[k] for k in perm])
        assert sorted(shuffled) == sorted(degrees)


def test_path_from_vertices_prefers_directed_edge():
    g = MixedGraph(2, [(0, 1)], [(0, 1)])
    assert path_from_vertices(g, [0, 1]).steps[0][0] == EdgeRef(DIRECTED, 0)
    assert path_from_vertices(g, [1, 0]).steps[0][0] == EdgeRef(UNDIRECTED, 0)
    assert isinstance(path_from_vertices(g, [1]), RoutedPath)
