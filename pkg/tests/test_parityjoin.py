import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pgmatroid import oracles
from pgmatroid.generate import random_multigraph, random_parities
from pgmatroid.gf2 import INFINITY
from pgmatroid.graph import MultiGraph
from pgmatroid.parityjoin import (
    build_join_graph,
    closed_walk_table,
    cycle_table,
    join_size_bound,
    parity_cycle,
    parity_join,
    parity_walk,
    product_graph_size,
    two_join,
    walk_distances,
    wtilde_table,
)
from pgmatroid.pfaffian import parity_matching


def labelled(n, edges):
    """``edges`` as (u, v, parity)."""
    g = MultiGraph.from_pairs(n, [(u, v) for u, v, _ in edges])
    return g, {k: p for k, (_, _, p) in enumerate(edges)}


def random_labelled(rng, n, m, t, connected=True):
    g = random_multigraph(rng, n, m, connected=connected)
    return g, random_parities(rng, g, t)


# walks ----------------------------------------------------------------------


def test_walk_examples():
    g, gamma = labelled(2, [(1, 2, 1)])
    assert parity_walk(g, gamma, 1, 0, 1, 1) == 0
    assert parity_walk(g, gamma, 1, 0, 1, 2) == INFINITY
    assert parity_walk(g, gamma, 1, 1, 1, 2) == 1
    assert parity_walk(g, gamma, 1, 1, 1, 1) == INFINITY


def test_walk_matches_layered_search(rng):
    for _ in range(30):
        t = int(rng.integers(0, 3))
        g, gamma = random_labelled(rng, 8, int(rng.integers(7, 14)), t, connected=bool(rng.random() < 0.6))
        for _ in range(4):
            u, v = (int(x) for x in rng.integers(1, 9, size=2))
            alpha = int(rng.integers(0, 1 << t))
            assert parity_walk(g, gamma, t, alpha, u, v) == oracles.walk_lengths_by_layers(g, gamma, t, alpha, u, v)


@given(st.integers(0, 2**32 - 1))
def test_walk_symmetry_and_triangle_inequality(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 7))
    t = int(rng.integers(0, 3))
    g, gamma = random_labelled(rng, n, int(rng.integers(max(n - 1, 0), 10)), t, connected=False)
    dist = {u: walk_distances(g, gamma, t, u) for u in g.vertices}
    nb = 1 << t
    for u in g.vertices:
        for v in g.vertices:
            for a in range(nb):
                assert dist[u][v][a] == dist[v][u][a]
                for w in g.vertices:
                    for b in range(nb):
                        assert dist[u][w][a ^ b] <= dist[u][v][a] + dist[v][w][b]


def test_product_graph_size(rng):
    for _ in range(20):
        t = int(rng.integers(0, 3))
        g, gamma = random_labelled(rng, 6, 10, t)
        nv, ne = product_graph_size(g, gamma, t)
        assert nv == 2**t * g.n and ne <= 2**t * g.m
    # two parallel edges with the same parity collapse
    g, gamma = labelled(2, [(1, 2, 1), (1, 2, 1)])
    assert product_graph_size(g, gamma, 1) == (4, 2)
    g, gamma = labelled(2, [(1, 2, 1), (1, 2, 0)])
    assert product_graph_size(g, gamma, 1) == (4, 4)


# closed walks and cycles ----------------------------------------------------


def test_closed_walk_examples():
    g, gamma = labelled(4, [(1, 2, 0), (2, 3, 0), (2, 4, 0)])
    assert closed_walk_table(g, gamma, 1) == [0, INFINITY]
    g, gamma = labelled(1, [(1, 1, 1)])
    assert closed_walk_table(g, gamma, 1) == [0, 1]
    g, gamma = labelled(3, [(1, 2, 1), (2, 3, 0), (1, 3, 0)])
    assert closed_walk_table(g, gamma, 1) == [0, 3]


def test_wtilde_examples():
    assert wtilde_table([0, 5], 1) == [0, 5]
    assert wtilde_table([0, 3, 4, 9], 2) == [0, 3, 4, 7]
    assert wtilde_table([0, INFINITY, INFINITY, INFINITY], 2) == [0, INFINITY, INFINITY, INFINITY]
    with pytest.raises(ValueError):
        wtilde_table([0] * 32, 5)


@given(st.lists(st.one_of(st.integers(1, 20), st.just(INFINITY)), min_size=7, max_size=7))
def test_wtilde_matches_subset_enumeration(vals):
    w = [0] + vals
    wt = wtilde_table(w, 3)
    want = [INFINITY] * 8
    for subset in range(1 << 8):
        acc, total = 0, 0
        for beta in range(8):
            if subset >> beta & 1:
                acc ^= beta
                total += w[beta]
        want[acc] = min(want[acc], total)
    assert wt == want
    for a in range(8):
        for b in range(8):
            assert wt[a ^ b] <= wt[a] + wt[b]


def test_cycle_examples():
    g, gamma = labelled(3, [(1, 2, 1), (2, 3, 1), (1, 3, 1)])
    assert parity_cycle(g, gamma, 1, 0) == 0
    assert parity_cycle(g, gamma, 1, 1) == 3


def test_cycle_matches_subset_enumeration(rng):
    for _ in range(25):
        t = int(rng.integers(0, 3))
        g, gamma = random_labelled(rng, 7, int(rng.integers(6, 15)), t, connected=bool(rng.random() < 0.7))
        table = cycle_table(g, gamma, t)
        for alpha in range(1 << t):
            assert table[alpha] == oracles.min_parity_cycle(g, gamma, alpha)


# joins ----------------------------------------------------------------------


def test_two_join_examples():
    g, gamma = labelled(2, [(1, 2, 1)])
    assert two_join(g, gamma, 1, 1, 2, 1) == 1
    assert two_join(g, gamma, 1, 1, 2, 0) == INFINITY
    with pytest.raises(ValueError):
        two_join(g, gamma, 1, 1, 1, 0)


def test_two_join_matches_subset_enumeration(rng):
    for _ in range(25):
        t = int(rng.integers(0, 3))
        g, gamma = random_labelled(rng, 6, int(rng.integers(5, 13)), t, connected=bool(rng.random() < 0.7))
        for alpha in range(1 << t):
            val = two_join(g, gamma, t, 1, 2, alpha)
            assert val == oracles.min_join(g, gamma, (1, 2), alpha)
            assert val == INFINITY or val <= join_size_bound(t, g.n)


def test_join_size_bound():
    assert join_size_bound(0, 7) == 7
    assert join_size_bound(2, 10) == 40


def test_join_graph_shape(rng):
    g, gamma = random_labelled(rng, 6, 10, 2)
    jg = build_join_graph(g, gamma, 2, [2, 5])
    assert len(jg.edges) <= 4 and all({u, v} == {2, 5} for u, v, _, _ in jg.edges)
    with pytest.raises(ValueError):
        build_join_graph(g, gamma, 2, [1, 2, 3])


def test_join_graph_disconnected_terminals():
    g, gamma = labelled(4, [(1, 2, 0), (3, 4, 1)])
    jg = build_join_graph(g, gamma, 1, [1, 2, 3, 4])
    pairs = {frozenset((u, v)) for u, v, _, _ in jg.edges}
    assert pairs == {frozenset((1, 2)), frozenset((3, 4))}


def test_join_graph_weights_are_two_joins(rng):
    g, gamma = random_labelled(rng, 8, 13, 1)
    terms = [1, 3, 6, 8]
    jg = build_join_graph(g, gamma, 1, terms)
    seen = {(u, v, b): w for u, v, b, w in jg.edges}
    for i, u in enumerate(terms):
        for v in terms[i + 1:]:
            for beta in range(2):
                val = two_join(g, gamma, 1, u, v, beta)
                assert seen.get((u, v, beta), INFINITY) == val


def test_parity_join_trivial_cases():
    g, gamma = labelled(3, [(1, 2, 1), (2, 3, 0)])
    assert parity_join(g, gamma, 1, [], 0) == 0
    assert parity_join(g, gamma, 1, [], 1) == INFINITY
    assert parity_join(g, gamma, 1, [1], 0) == INFINITY


def test_two_terminal_paths_agree(rng):
    for _ in range(20):
        t = int(rng.integers(0, 3))
        g, gamma = random_labelled(rng, 6, 9, t, connected=bool(rng.random() < 0.7))
        for alpha in range(1 << t):
            direct = parity_join(g, gamma, t, [2, 4], alpha)
            via = parity_matching(build_join_graph(g, gamma, t, [2, 4]).matching_instance(alpha), 2, 10, rng)
            assert direct == via == two_join(g, gamma, t, 2, 4, alpha)


def test_four_terminals_match_enumeration(rng):
    for _ in range(20):
        g, gamma = random_labelled(rng, 8, int(rng.integers(7, 17)), 1, connected=bool(rng.random() < 0.8))
        terms = sorted(int(v) + 1 for v in rng.choice(8, size=4, replace=False))
        for alpha in (0, 1):
            assert parity_join(g, gamma, 1, terms, alpha, 2, 20, rng) == oracles.min_join(g, gamma, terms, alpha)


@given(st.integers(0, 2**32 - 1))
def test_parity_join_property(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 8))
    t = int(rng.integers(0, 3))
    g, gamma = random_labelled(rng, n, int(rng.integers(n - 1, 14)), t, connected=bool(rng.random() < 0.7))
    k = min(int(rng.choice([0, 2, 4, 6])), n - n % 2)
    terms = [int(v) + 1 for v in rng.choice(n, size=k, replace=False)]
    alpha = int(rng.integers(0, 1 << t))
    got = parity_join(g, gamma, t, terms, alpha, 2, 20, rng)
    assert got == oracles.min_join(g, gamma, terms, alpha)
