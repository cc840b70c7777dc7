import itertools

import networkx as nx
from hypothesis import given, strategies as st

from readcode.independent import (
    adjacency_masks,
    components,
    greedy_independent_set,
    is_clique,
    is_independent,
    mask_to_list,
    maximum_independent_set,
    maximum_independent_set_milp,
)


@st.composite
def graphs(draw, max_n=14):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return n, edges


def brute_mis(n, edges):
    adj = adjacency_masks(n, edges)
    best = 0
    for mask in range(1 << n):
        if is_independent(adj, mask):
            best = max(best, bin(mask).count("1"))
    return best


@given(graphs())
def test_solvers_agree_with_brute_force(g):
    n, edges = g
    adj = adjacency_masks(n, edges)
    expect = brute_mis(n, edges)
    for mask in (maximum_independent_set(adj), maximum_independent_set_milp(adj)):
        assert is_independent(adj, mask)
        assert bin(mask).count("1") == expect
    greedy = greedy_independent_set(adj)
    assert is_independent(adj, greedy)
    assert bin(greedy).count("1") <= expect


@given(graphs(max_n=10))
def test_clique_constraints_do_not_change_optimum(g):
    n, edges = g
    adj = adjacency_masks(n, edges)
    cliques = [list(c) for c in nx.find_cliques(nx.Graph(edges))] if edges else []
    cliques.append(list(range(n)))  # usually not a clique; must be ignored
    mask = maximum_independent_set_milp(adj, cliques)
    assert is_independent(adj, mask)
    assert bin(mask).count("1") == brute_mis(n, edges)


@given(graphs())
def test_components_partition(g):
    n, edges = g
    adj = adjacency_masks(n, edges)
    comps = components(adj, (1 << n) - 1)
    assert sum(bin(c).count("1") for c in comps) == n
    union = 0
    for c in comps:
        assert union & c == 0
        union |= c
    expect = sorted(sorted(c) for c in nx.connected_components(_nxgraph(n, edges)))
    assert sorted(mask_to_list(c) for c in comps) == expect


def _nxgraph(n, edges):
    h = nx.Graph(edges)
    h.add_nodes_from(range(n))
    return h


def test_is_clique():
    adj = adjacency_masks(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    assert is_clique(adj, [0, 1, 2])
    assert not is_clique(adj, [0, 1, 3])
    assert is_clique(adj, [3])


def test_cycle():
    n = 9
    adj = adjacency_masks(n, [(i, (i + 1) % n) for i in range(n)])
    assert bin(maximum_independent_set(adj)).count("1") == 4
    assert bin(maximum_independent_set_milp(adj)).count("1") == 4
