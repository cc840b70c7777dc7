import itertools
import math
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st

from readcode import bounds
from readcode.channel import format_word, int_to_word, read_vector
from readcode.code import code_params, enumerate_code
from readcode.errors import ParameterError, ScaleGuardError


def read_distance(x, y, ell):
    return sum(a != b for a, b in zip(read_vector(x, ell).values, read_vector(y, ell).values))


def pi_oracle(x, p, ell):
    n = len(x)
    rows = p * (n // (p * ell))
    used = rows * ell
    m = np.array(x[:used], dtype=int).reshape(rows, ell) if rows else np.zeros((0, ell), dtype=int)
    cols = ell - (ell % 2)
    out, taken = [], set()
    for r0 in range(0, rows, p):
        for c0 in range(0, cols, 2):
            for r in range(r0, r0 + p):
                out += [int(m[r, c0]), int(m[r, c0 + 1])]
                taken |= {r * ell + c0, r * ell + c0 + 1}
    out += [x[t] for t in range(n) if t not in taken]
    return tuple(out)


def test_confusable_example():
    c = bounds.confusable("101100", "011010", 3)
    assert c and (c.i, c.j, c.p) == (1, 7, 2)
    assert c.read_condition and c.pattern_condition
    assert not bounds.confusable("101100", "101100", 3)
    flip = bounds.confusable("101100", "111100", 3)
    assert not flip and flip.distance == 3


@given(st.integers(4, 11), st.integers(3, 5), st.data())
def test_confusable_matches_read_distance(n, ell, data):
    x = data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n).map(tuple))
    y = data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n).map(tuple))
    c = bounds.confusable(x, y, ell)
    assert c.distance == read_distance(x, y, ell)
    assert bool(c) == (c.distance == 2)
    if c:
        assert c.j == c.i + c.p * ell
        assert c.pattern_condition


@pytest.mark.parametrize("n,ell", [(6, 3), (8, 3), (8, 4), (9, 5)])
def test_characterization(n, ell):
    rep = bounds.verify_characterization(n, ell)
    assert rep.passed, rep.to_dict()
    if n == 6:
        pair = (int("011010", 2), int("101100", 2))
        assert pair in set(bounds.read_distance_pairs(6, 3))


def test_pattern_pairs_are_distance_two():
    # plant p swapped blocks at i, i+ell, ..., i+(p-1)ell and check read distance directly
    n, ell = 9, 3
    for u, v in bounds.pattern_pairs(n, ell):
        x, y = int_to_word(u, n), int_to_word(v, n)
        ra, rb = read_vector(x, ell).values, read_vector(y, ell).values
        diff = [q + 1 for q in range(len(ra)) if ra[q] != rb[q]]
        assert len(diff) == 2
        assert (diff[1] - diff[0]) % ell == 0


def test_characterization_guard():
    with pytest.raises(ScaleGuardError):
        bounds.verify_characterization(13, 3)
    with pytest.raises(ParameterError):
        bounds.verify_characterization(6, 2)


def test_pi_examples():
    assert format_word(bounds.pi_p("101100", 2, 3)) == "101010"
    assert format_word(bounds.pi_p("011010", 2, 3)) == "010110"
    assert bounds.pi_p("0110", 1, 4) == (0, 1, 1, 0)


@given(st.integers(1, 16), st.integers(1, 3), st.integers(2, 5), st.data())
def test_pi_matches_reshape_oracle(n, p, ell, data):
    x = data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n).map(tuple))
    y = bounds.pi_p(x, p, ell)
    assert y == pi_oracle(x, p, ell)
    assert bounds.pi_p_inverse(y, p, ell) == x


def test_lambda():
    assert bounds.lambda_p(2) == {(0, 1, 1, 0), (1, 0, 0, 1), (0, 1, 0, 1), (1, 0, 1, 0)}
    assert bounds.lambda_p(1) == {(0, 1), (1, 0)}
    assert bounds.lambda_p_membership("0110", 2)
    assert not bounds.lambda_p_membership("0000", 2)
    assert not bounds.lambda_p_membership("11", 1)
    with pytest.raises(ParameterError):
        bounds.lambda_p_membership("011", 2)
    for p in range(1, 6):
        assert len(bounds.lambda_p(p)) == 2 * p


def formula(m, p):
    c = 1 - Fraction(2 * p, 2 ** (2 * p))
    return 2 ** (2 * p * m) * (c ** m + Fraction(1, p) * (1 - c ** m))


@pytest.mark.parametrize("m,p", [(0, 1), (0, 3), (1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 2)])
def test_cover_sizes(m, p):
    built = bounds.build_clique_cover(m, p)
    assert len(built) == bounds.clique_cover_size(m, p) == formula(m, p)
    words = [w for q in built.cliques for w in q]
    assert len(words) == len(set(words)) == 2 ** (2 * p * m)


def test_cover_size_examples():
    assert bounds.clique_cover_size(1, 1) == 4
    assert bounds.clique_cover_size(1, 2) == 14
    assert bounds.clique_cover_size(2, 2) == 200
    assert bounds.clique_cover_size(0, 5) == 1
    q = bounds.build_clique_cover(1, 2)
    big = sorted(sorted(format_word(w) for w in c) for c in q.cliques if len(c) > 1)
    assert big == [["0101", "0110"], ["1001", "1010"]]


def test_cover_guard():
    with pytest.raises(ScaleGuardError):
        bounds.build_clique_cover(7, 2)


def test_pullback_cover():
    cover = bounds.pullback_cover(8, 4, 2)
    words = [w for q in cover.cliques for w in q]
    assert len(set(words)) == 256
    assert len(cover) == bounds.pullback_cover_size(8, 4, 2)
    for q in cover.cliques:
        for a, b in itertools.combinations(q, 2):
            assert read_distance(a, b, 4) == 2


@pytest.mark.parametrize("n,ell", [(9, 3), (10, 4), (12, 5)])
def test_pullback_log_formula(n, ell):
    for p in range(1, 4):
        if bounds.cover_block_count(n, ell, p) == 0 and p > 1:
            continue
        exact = math.log2(bounds.pullback_cover_size(n, ell, p))
        assert bounds.log2_pullback_size(n, ell, p) == pytest.approx(exact, abs=1e-9)


def test_lower_bound_values():
    assert bounds.redundancy_lower_bound(2 ** 16, 0.5) == pytest.approx(2.0)
    assert bounds.redundancy_lower_bound(2 ** 8, 0.5) == pytest.approx(1.0)
    vals = [bounds.redundancy_lower_bound(n, 0.3) for n in range(2, 400)]
    assert vals == sorted(vals)
    with pytest.raises(ParameterError):
        bounds.redundancy_lower_bound(10, 1.0)
    d = bounds.lower_bound_details(2 ** 16, 3, 0.5)
    assert d.p == 4
    assert d.cover_redundancy == pytest.approx(2 ** 16 - d.log2_cover)


def networkx_mis(g):
    base = nx.Graph()
    base.add_nodes_from(range(g.num_vertices))
    base.add_edges_from(g.edges)
    clique, size = nx.max_weight_clique(nx.complement(base), weight=None)
    return size


@pytest.mark.parametrize("n,ell", [(4, 3), (5, 3), (6, 3), (6, 4), (6, 5)])
def test_mis_matches_networkx(n, ell):
    g = bounds.confusability_graph(n, ell)
    res = bounds.max_independent_set(g)
    assert res.exact
    assert res.size == networkx_mis(g)
    assert bounds.max_independent_set(g, method="bnb").size == res.size


@pytest.mark.parametrize("ell", [3, 4])
def test_sandwich_n8(ell):
    g = bounds.confusability_graph(8, ell)
    res = bounds.max_independent_set(g)
    assert res.size == bounds.max_independent_set(g, method="bnb").size
    code = enumerate_code(code_params(8, ell))
    assert len(code) <= res.size
    p = 1
    while bounds.cover_block_count(8, ell, p) >= 1:
        assert res.size <= bounds.pullback_cover_size(8, ell, p)
        p += 1
    for u, v in itertools.combinations(res.witness, 2):
        assert read_distance(int_to_word(u, 8), int_to_word(v, 8), ell) >= 3


def test_mis_edgeless_and_guard():
    g = bounds.ConfusabilityGraph(3, 3, [])
    assert bounds.max_independent_set(g).size == 8
    big = bounds.ConfusabilityGraph(11, 3, [])
    with pytest.raises(ScaleGuardError):
        bounds.max_independent_set(big, exact=True)
    approx = bounds.max_independent_set(bounds.confusability_graph(11, 3))
    assert not approx.exact
    with pytest.raises(ParameterError):
        bounds.max_independent_set(g, method="anneal")
