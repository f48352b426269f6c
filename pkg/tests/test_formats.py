import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pgmatroid import formats
from pgmatroid.formats import ParityInstance, ParseError, parse_instance, parse_text
from pgmatroid.generate import (
    random_dim_evencut,
    random_matching_instance,
    random_multigraph,
    random_parities,
    random_rank_matrix,
    random_set_evencut,
    random_skew_matrix,
)
from pgmatroid.gf2 import Gf2Matrix
from pgmatroid.graft import SignedGraft

TRIANGLE = """\
# a triangle
graph 3 3
e 0 1 2
e 1 2 3
e 2 1 3
"""


def test_triangle_graph(tmp_path):
    path = tmp_path / "tri.txt"
    path.write_text(TRIANGLE)
    g = parse_instance(path, "graph")
    assert g.n == 3 and g.m == 3
    assert [(e.u, e.v) for e in g.edges] == [(1, 2), (2, 3), (1, 3)]


def test_matrix_row_length_error():
    with pytest.raises(ParseError, match="line 3") as err:
        parse_text("gf2matrix 2 2\n10\n012\n", "gf2matrix")
    assert "row 2" in str(err.value) and "wrong length" in str(err.value)


def test_matrix_bad_character():
    with pytest.raises(ParseError):
        parse_text("gf2matrix 1 2\n12\n", "gf2matrix")


def test_odd_terminal_set_named():
    text = "evencut-set\ngraph 3 2\ne 0 1 2\ne 1 2 3\nT 1 1 2 3\n"
    with pytest.raises(ValueError, match="T_1 has odd cardinality"):
        parse_text(text, "evencut-set")


@pytest.mark.parametrize(
    "text",
    [
        "graph 2 1\n",
        "graph 2 1\ne 0 1 3\n",
        "graph 2 1\ne 0 1 2\ne 1 1 2\n",
        "graph 2 2\ne 0 1 2\ne 0 1 2\n",
        "graph x 1\n",
        "grph 2 0\n",
    ],
)
def test_graph_errors(text):
    with pytest.raises(ValueError):
        parse_text(text, "graph")


def test_matching_requires_attributes():
    text = "matching t=1\ngraph 2 1\ne 0 1 2 p=1\nalpha 1\n"
    with pytest.raises(ParseError, match="w="):
        parse_text(text, "matching")


def test_unknown_kind():
    with pytest.raises(ValueError, match="unknown"):
        parse_text("", "nope")
    assert set(formats.iter_kinds()) == set(formats.PARSERS)


def roundtrip(obj, kind, fmt):
    text = fmt(obj)
    again = parse_text(text, kind)
    assert fmt(again) == text
    return again


@given(st.integers(0, 2**32 - 1))
def test_roundtrips(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 8))
    m = int(rng.integers(max(n - 1, 0), 12))
    t = int(rng.integers(0, 3))

    mat = Gf2Matrix(n, m, [int(x) for x in rng.integers(0, 1 << m, size=n)] if m else [0] * n)
    assert roundtrip(mat, "gf2matrix", formats.format_gf2matrix) == mat

    g = random_multigraph(rng, n, m)
    assert roundtrip(g, "graph", formats.format_graph) == g

    if n >= 2:
        sinst = random_set_evencut(rng, n, m, t)
        assert roundtrip(sinst, "evencut-set", formats.format_evencut_set) == sinst
    dinst = random_dim_evencut(rng, n, m, t)
    assert roundtrip(dinst, "evencut-dim", formats.format_evencut_dim) == dinst

    minst = random_matching_instance(rng, n, m, t)
    back = roundtrip(minst, "matching", formats.format_matching)
    assert back.graph == minst.graph and dict(back.weights) == dict(minst.weights)
    assert dict(back.parities) == dict(minst.parities) and back.alpha == minst.alpha

    gamma = random_parities(rng, g, t)
    terms = tuple(sorted(int(v) + 1 for v in rng.choice(n, size=n - n % 2, replace=False)))
    pinst = ParityInstance(g, t, gamma, terms, int(rng.integers(0, 1 << t)))
    assert roundtrip(pinst, "parity", formats.format_parity) == pinst

    s = int(rng.integers(0, 3))
    rand = lambda r, c: Gf2Matrix(r, c, [int(x) for x in rng.integers(0, 1 << c, size=r)] if c else [0] * r)
    sg = SignedGraft(g, rand(n, t), rand(s, m), rand(s, t))
    assert roundtrip(sg, "graft", formats.format_graft) == sg

    d = random_skew_matrix(rng, 2 * (n // 2), t, density=0.7)
    assert roundtrip(d, "skewmatrix", formats.format_skewmatrix).nonzero_upper() == d.nonzero_upper()


def test_parity_without_terminals():
    text = "parity t=1\ngraph 2 1\ne 0 1 2 p=1\nalpha 1\n"
    inst = parse_text(text, "parity")
    assert inst.terminals is None and inst.gamma == {0: 1} and inst.alpha == 1


def test_perturbation_matrix_file(tmp_path):
    p = random_rank_matrix(np.random.default_rng(1), 4, 6, 2)
    path = tmp_path / "p.txt"
    path.write_text(formats.format_gf2matrix(p))
    assert parse_instance(path, "gf2matrix") == p
