import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pgmatroid import gf2
from pgmatroid.evencut import dim_feasible, dim_min_cocycle_exhaustive
from pgmatroid.generate import random_multigraph, random_rank_matrix
from pgmatroid.gf2 import INFINITY, Gf2Matrix
from pgmatroid.graft import (
    SignedGraft,
    from_perturbation,
    graft_incidence,
    graft_matroid,
    reduce_s,
    reduce_t,
    to_evencut,
)
from pgmatroid.graph import MultiGraph, incidence_matrix


def random_graft(rng, n, m, s, t):
    g = random_multigraph(rng, n, m)
    rand = lambda r, c: Gf2Matrix(r, c, [int(x) for x in rng.integers(0, 1 << c, size=r)] if c else [0] * r)
    return SignedGraft(g, rand(n, t), rand(s, m), rand(s, t))


def plain(m: Gf2Matrix) -> Gf2Matrix:
    return m.with_labels(None, None)


def test_dimension_checks():
    g = MultiGraph.from_pairs(2, [(1, 2)])
    with pytest.raises(ValueError):
        SignedGraft(g, Gf2Matrix.zeros(3, 1), Gf2Matrix.zeros(1, 1), Gf2Matrix.zeros(1, 1))
    with pytest.raises(ValueError):
        SignedGraft(g, Gf2Matrix.zeros(2, 1), Gf2Matrix.zeros(1, 2), Gf2Matrix.zeros(1, 1))
    with pytest.raises(ValueError):
        SignedGraft(g, Gf2Matrix.zeros(2, 1), Gf2Matrix.zeros(1, 1), Gf2Matrix.zeros(2, 1))


def test_zero_graft_incidence_is_graph_incidence():
    g = MultiGraph.from_pairs(3, [(1, 2), (2, 3), (3, 3)])
    sg = SignedGraft(g, Gf2Matrix.zeros(3, 0), Gf2Matrix.zeros(0, 3), Gf2Matrix.zeros(0, 0))
    assert graft_incidence(sg) == incidence_matrix(g)


def test_single_edge_block_layout():
    g = MultiGraph.from_pairs(2, [(1, 2)])
    sg = SignedGraft(g, Gf2Matrix.zeros(2, 1), Gf2Matrix.zeros(1, 1), Gf2Matrix.zeros(1, 1))
    m = graft_incidence(sg)
    assert m.shape == (3, 2)
    assert m.to_lists() == [[0, 0], [1, 0], [1, 0]]
    assert m.row_labels == ("s1", 1, 2) and m.col_labels == (0, "t1")


def test_labels_are_disjoint_from_graph():
    sg = random_graft(np.random.default_rng(0), 4, 6, 2, 2)
    assert set(sg.S).isdisjoint(sg.graph.vertices)
    assert set(sg.T).isdisjoint(sg.graph.edge_ids)


def test_zero_perturbation():
    g = MultiGraph.from_pairs(3, [(1, 2), (2, 3), (1, 3)])
    sg = from_perturbation(g, Gf2Matrix.zeros(3, 3))
    assert sg.s == sg.t == 0
    assert gf2.girth_oracle(graft_matroid(sg)) == 3


def test_perturbation_shape_rejected():
    g = MultiGraph.from_pairs(3, [(1, 2)])
    with pytest.raises(ValueError):
        from_perturbation(g, Gf2Matrix.zeros(2, 1))


@pytest.mark.parametrize("n,m,t", [(3, 3, 1), (6, 8, 2), (5, 9, 3)])
def test_from_perturbation_preserves_matroid(rng, n, m, t):
    for _ in range(15):
        g = random_multigraph(rng, n, m)
        p = random_rank_matrix(rng, n, m, t)
        sg = from_perturbation(g, p)
        assert sg.s == sg.t == t and sg.D == Gf2Matrix.identity(t)
        total = plain(incidence_matrix(g)) + p
        rep = graft_matroid(sg)
        assert gf2.girth_oracle(total) == gf2.girth_oracle(rep)
        assert gf2.cogirth_oracle(total) == gf2.cogirth_oracle(rep)


@given(st.integers(0, 2**32 - 1))
def test_perturbation_cycle_spaces_agree(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 6))
    m = int(rng.integers(n - 1, 10))
    t = int(rng.integers(0, min(n, m, 3) + 1))
    g = random_multigraph(rng, n, m)
    p = random_rank_matrix(rng, n, m, t)
    rep = graft_matroid(from_perturbation(g, p))
    total = plain(incidence_matrix(g)) + p
    assert set(gf2.iter_cycles(rep)) == set(gf2.iter_cycles(total))


def test_reduce_s_small_cases(rng):
    sg = random_graft(rng, 4, 5, 1, 2)
    out = reduce_s(sg)
    assert len(out) == 2
    assert out[0].C.rows == (0,) and out[0].D.rows == (0,)
    assert out[1].C == sg.C and out[1].D == sg.D
    zero = random_graft(rng, 4, 5, 0, 2)
    (only,) = reduce_s(zero)
    assert only.s == 1 and only.C.rows == (0,) and only.D.rows == (0,)


def test_reduce_t_small_cases(rng):
    sg = random_graft(rng, 4, 5, 2, 1)
    out = reduce_t(sg)
    assert len(out) == 2
    assert out[0].B.rows == (0,) * 4 and out[0].D.rows == (0, 0)
    assert out[1].B == sg.B and out[1].D == sg.D
    bare = random_graft(rng, 4, 5, 2, 0)
    (only,) = reduce_t(bare)
    assert only.t == 1 and only.B.rows == (0,) * 4
    # contracting a zero T' column is deleting it
    assert gf2.girth_oracle(graft_matroid(only)) == gf2.girth_oracle(plain(graft_incidence(bare)))


@given(st.integers(0, 2**32 - 1))
def test_reductions_preserve_girth_and_cogirth(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 6))
    s, t = int(rng.integers(0, 3)), int(rng.integers(0, 3))
    sg = random_graft(rng, n, int(rng.integers(n - 1, 9)), s, t)
    rep = graft_matroid(sg)
    red_t = reduce_t(sg)
    red_s = reduce_s(sg)
    assert len(red_t) == 2**t and len(red_s) == 2**s
    assert all(b.t == 1 and b.s == s for b in red_t)
    assert all(b.s == 1 and b.t == t for b in red_s)
    assert gf2.girth_oracle(rep) == min(gf2.girth_oracle(graft_matroid(b)) for b in red_t)
    assert gf2.cogirth_oracle(rep) == min(gf2.cogirth_oracle(graft_matroid(b)) for b in red_s)


def test_to_evencut_fields(rng):
    sg = random_graft(rng, 4, 5, 1, 2)
    inst = to_evencut(sg)
    assert inst.tau == tuple(sg.B.rows) and inst.alpha == sg.D.rows[0]
    assert inst.sigma == frozenset(sg.graph.edge_ids[k] for k in gf2.mask_to_indices(sg.C.rows[0]))
    with pytest.raises(ValueError):
        to_evencut(random_graft(rng, 4, 5, 2, 1))


def test_to_evencut_zero_rows():
    g = MultiGraph.from_pairs(3, [(1, 2), (2, 3)])
    sg = SignedGraft(g, Gf2Matrix.zeros(3, 1), Gf2Matrix.zeros(1, 2), Gf2Matrix.zeros(1, 1))
    inst = to_evencut(sg)
    assert inst.sigma == frozenset() and inst.alpha == 0


def test_to_evencut_triangle_with_sigma():
    g = MultiGraph.from_pairs(3, [(1, 2), (2, 3), (1, 3)])
    sg = SignedGraft(g, Gf2Matrix.zeros(3, 0), Gf2Matrix(1, 3, [0b001]), Gf2Matrix.zeros(1, 0))
    inst = to_evencut(sg)
    assert inst.sigma == frozenset({0})
    assert dim_min_cocycle_exhaustive(inst).size == gf2.cogirth_oracle(graft_matroid(sg)) == 1


@given(st.integers(0, 2**32 - 1))
def test_to_evencut_optimum_is_cogirth(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 9))
    t = int(rng.integers(0, 3))
    sg = random_graft(rng, n, int(rng.integers(max(n - 1, 1), 12)), 1, t)
    inst = to_evencut(sg)
    res = dim_min_cocycle_exhaustive(inst)
    want = gf2.cogirth_oracle(graft_matroid(sg))
    assert (res.size if res else INFINITY) == want
    assert dim_feasible(inst) == (want != INFINITY)
