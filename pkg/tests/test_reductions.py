from itertools import combinations

import pytest

from conftest import oracle_dicut, oracle_mis, oracle_optimum
from mixorient.errors import InputError
from mixorient.graph import reachable_set
from mixorient.pathfinding import conflict_degrees
from mixorient.preprocess import is_acyclic
from mixorient.reductions import (
    gen_from_dicut, gen_from_independent_set, gen_grid_full_orientation, gen_random_acyclic,
    gen_random_forest, gen_random_instance,
)
from mixorient.solvers import solve_exact, solve_fixed_paths


def fixed_optimum(gen):
    return solve_fixed_paths(gen.fixed_path_instance(), "exact").count


def test_isolated_pair_has_disjoint_paths():
    gen = gen_from_independent_set(2, [])
    paths = gen.fixed_path_instance().routed()
    assert conflict_degrees(paths)[1] == []
    assert fixed_optimum(gen) == 2


def test_single_edge_gadget():
    gen = gen_from_independent_set(2, [(0, 1)])
    degrees, pairs = conflict_degrees(gen.fixed_path_instance().routed())
    assert pairs == [(0, 1)] and fixed_optimum(gen) == 1


def test_conflicts_mirror_source_edges():
    n = 4
    edges = [(0, 1), (1, 2), (0, 3)]
    _, pairs = conflict_degrees(gen_from_independent_set(n, edges).fixed_path_instance().routed())
    assert pairs == sorted(edges)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_independent_set_value_small(n):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        edges = [e for k, e in enumerate(pairs) if mask >> k & 1]
        assert fixed_optimum(gen_from_independent_set(n, edges)) == oracle_mis(n, edges)


def test_dicut_empty_and_single_arc():
    gen = gen_from_dicut(2, [])
    assert gen.requests == [] and solve_exact(gen.graph, []).count == 0
    gen = gen_from_dicut(2, [(0, 1)])
    assert gen.graph.n == 9 and gen.metadata["grid"] == "3x3"
    assert solve_exact(gen.graph, gen.requests).count == 1 == oracle_dicut(2, [(0, 1)])


def test_dicut_one_undirected_edge_per_source_vertex():
    gen = gen_from_dicut(3, [(0, 1), (2, 1)])
    assert gen.graph.num_undirected == 3
    assert sorted(gen.graph.undirected) == [(0, 1), (6, 7), (12, 13)]


def test_dicut_value_three_vertices():
    arcs_all = [(a, b) for a in range(3) for b in range(3) if a != b]
    for mask in range(1 << len(arcs_all)):
        arcs = [e for k, e in enumerate(arcs_all) if mask >> k & 1]
        gen = gen_from_dicut(3, arcs)
        assert solve_exact(gen.graph, gen.requests).count == oracle_dicut(3, arcs)


def test_dicut_value_cross_checked_by_itertools():
    gen = gen_from_dicut(3, [(0, 1), (1, 2), (2, 0)])
    assert oracle_optimum(gen.graph, gen.requests) == oracle_dicut(3, [(0, 1), (1, 2), (2, 0)]) == 1


def test_reductions_reject_bad_input():
    with pytest.raises(InputError):
        gen_from_independent_set(2, [(0, 0)])
    with pytest.raises(InputError):
        gen_from_dicut(2, [(0, 1), (0, 1)])


def _strongly_connected(gen, orient):
    return all(reachable_set(gen.graph, orient, v) == set(range(gen.graph.n)) for v in range(gen.graph.n))


def test_two_by_two_grid_is_a_cycle():
    gen, orient = gen_grid_full_orientation(2, 2)
    assert sorted(orient.values()) == [(0, 1), (1, 3), (2, 0), (3, 2)]
    assert _strongly_connected(gen, orient)


def test_three_by_four_grid_strongly_connected():
    gen, orient = gen_grid_full_orientation(3, 4)
    assert gen.graph.n == 12 and _strongly_connected(gen, orient)


def test_path_grid_refused():
    with pytest.raises(InputError, match="path"):
        gen_grid_full_orientation(1, 5)


def test_random_generators_deterministic():
    a = gen_random_instance(9, 0.2, 0.3, 6, seed=7)
    b = gen_random_instance(9, 0.2, 0.3, 6, seed=7)
    assert a.graph == b.graph and a.requests == b.requests and a.metadata == b.metadata
    assert gen_random_forest(9, 0.3, 5, 3).graph == gen_random_forest(9, 0.3, 5, 3).graph
    assert gen_random_acyclic(9, 0.8, 0.2, 5, 3).requests == gen_random_acyclic(9, 0.8, 0.2, 5, 3).requests
    assert len(set(a.requests)) == 6 and all(s != t for s, t in a.requests)


def test_random_instance_rejects_bad_parameters():
    with pytest.raises(InputError):
        gen_random_instance(3, 1.5, 0.2, 1, 0)
    with pytest.raises(InputError):
        gen_random_instance(3, 0.5, 0.2, 7, 0)


def test_no_undirected_edges_means_plain_reachability():
    gen = gen_random_instance(8, 0.3, 0.0, 10, seed=1)
    assert gen.graph.num_undirected == 0
    expected = sum(t in reachable_set(gen.graph, {}, s) for s, t in gen.requests)
    assert solve_exact(gen.graph, gen.requests).count == expected


def test_random_acyclic_generator():
    for seed in range(50):
        gen = gen_random_acyclic(12, 0.8, 0.15, 8, seed)
        assert is_acyclic(gen.graph)
        assert all(t in reachable_set(gen.graph, None, s) for s, t in gen.requests)
