import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pgmatroid import gf2
from pgmatroid.gf2 import INFINITY, Gf2Matrix


def matrices(max_rows=8, max_cols=10):
    return st.integers(0, max_rows).flatmap(
        lambda r: st.integers(0, max_cols).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(0, 1), min_size=c, max_size=c), min_size=r, max_size=r
            ).map(lambda rows: Gf2Matrix.from_lists(rows, ncols=c))
        )
    )


def numpy_rank(m: Gf2Matrix) -> int:
    """Independent elimination on a dense uint8 array."""
    a = np.array(m.to_lists(), dtype=np.uint8).reshape(m.nrows, m.ncols)
    r = 0
    for c in range(m.ncols):
        piv = next((i for i in range(r, m.nrows) if a[i, c]), None)
        if piv is None:
            continue
        a[[r, piv]] = a[[piv, r]]
        for i in range(m.nrows):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        r += 1
    return r


def brute_cycles(m: Gf2Matrix) -> set[int]:
    cols = m.columns()
    out = set()
    for mask in range(1 << m.ncols):
        acc = 0
        for j in range(m.ncols):
            if (mask >> j) & 1:
                acc ^= cols[j]
        if acc == 0:
            out.add(mask)
    return out


def test_rank_examples():
    assert gf2.rank(Gf2Matrix.identity(3)) == 3
    assert gf2.rank(Gf2Matrix.from_lists([[1, 1, 0], [0, 1, 1], [1, 0, 1]])) == 2


def test_rank_matches_dense_elimination(rng):
    for _ in range(30):
        m = Gf2Matrix.from_lists(rng.integers(0, 2, size=(6, 9)).tolist())
        assert gf2.rank(m) == numpy_rank(m)


@given(matrices())
def test_rank_equals_transpose_rank(m):
    assert gf2.rank(m) == gf2.rank(m.transpose())
    assert 0 <= gf2.rank(m) <= min(m.nrows, m.ncols)


def test_row_reduce_examples():
    z, piv = gf2.row_reduce(Gf2Matrix.zeros(2, 3))
    assert z == Gf2Matrix.zeros(2, 3) and piv == []
    i, piv = gf2.row_reduce(Gf2Matrix.identity(3))
    assert i == Gf2Matrix.identity(3) and piv == [0, 1, 2]
    r, piv = gf2.row_reduce(Gf2Matrix.from_lists([[1, 1], [1, 1]]))
    assert r.to_lists() == [[1, 1], [0, 0]] and piv == [0]


@given(matrices())
def test_row_reduce_is_rref_with_same_row_space(m):
    r, piv = gf2.row_reduce(m)
    assert piv == sorted(set(piv))
    for k, c in enumerate(piv):
        assert r.column(c) == 1 << k
        assert r.row(k) & ((1 << c) - 1) == 0
    for row in m.rows:
        assert gf2.in_row_space(r, row)
    for row in r.rows:
        assert gf2.in_row_space(m, row)


def test_factor_low_rank_examples():
    b, c = gf2.factor_low_rank(Gf2Matrix.zeros(3, 4))
    assert b.shape == (3, 0) and c.shape == (0, 4)
    p = Gf2Matrix.from_lists([[1], [0], [1]]) @ Gf2Matrix.from_lists([[1, 1, 0]])
    b, c = gf2.factor_low_rank(p)
    assert b.to_lists() == [[1], [0], [1]] and c.to_lists() == [[1, 1, 0]]


@given(matrices(16, 16))
def test_factor_low_rank_reproduces(p):
    b, c = gf2.factor_low_rank(p)
    assert b.ncols == c.nrows == gf2.rank(p)
    assert b @ c == p


def test_girth_and_cogirth_examples():
    assert gf2.girth_oracle(Gf2Matrix.from_lists([[1, 0], [0, 0]])) == 1
    tri = Gf2Matrix.from_lists([[1, 0, 1], [1, 1, 0], [0, 1, 1]])
    assert gf2.girth_oracle(tri) == 3
    assert gf2.girth_oracle(Gf2Matrix.from_lists([[1, 1, 0], [0, 0, 1]])) == 2
    assert gf2.cogirth_oracle(Gf2Matrix.identity(4)) == 1
    assert gf2.cogirth_oracle(tri) == 2
    assert gf2.cogirth_oracle(Gf2Matrix.zeros(3, 3)) == INFINITY
    assert gf2.girth_oracle(Gf2Matrix.identity(3)) == INFINITY


def test_oracle_size_guards():
    with pytest.raises(gf2.OracleSizeError):
        gf2.girth_oracle(Gf2Matrix.zeros(1, 30))
    with pytest.raises(gf2.OracleSizeError):
        gf2.cogirth_oracle(Gf2Matrix.identity(30))


@given(matrices(7, 12))
def test_girth_is_cogirth_of_dual(m):
    assert gf2.girth_oracle(m) == gf2.cogirth_oracle(gf2.dual_representation(m))


@given(matrices(6, 9))
def test_girth_matches_subset_enumeration(m):
    nonempty = [c for c in brute_cycles(m) if c]
    assert gf2.girth_oracle(m) == min((bin(c).count("1") for c in nonempty), default=INFINITY)


@given(matrices(6, 8))
def test_trivial_minor_keeps_cycles(m):
    rep = gf2.contract_delete(m, (), ())
    assert brute_cycles(rep.matrix) == brute_cycles(m)


def test_contract_loop_is_delete():
    m = Gf2Matrix.from_lists([[1, 0, 1], [0, 0, 1]])
    a = gf2.contract_delete(m, contract=[1])
    b = gf2.contract_delete(m, delete=[1])
    assert brute_cycles(a.matrix) == brute_cycles(b.matrix)
    assert a.ground == b.ground == (0, 2)


def test_contract_delete_matches_cycle_enumeration(rng):
    for _ in range(20):
        m = Gf2Matrix.from_lists(rng.integers(0, 2, size=(5, 8)).tolist())
        contract = [int(x) for x in rng.choice(8, size=2, replace=False)]
        rest = [j for j in range(8) if j not in contract]
        delete = [rest[0]]
        rep = gf2.contract_delete(m, contract, delete)
        keep = [j for j in range(8) if j not in contract and j not in delete]
        assert list(rep.ground) == keep
        # cycles of M/C\D are restrictions Z - C of cycles Z of M avoiding D
        expect = set()
        for z in brute_cycles(m):
            if any((z >> d) & 1 for d in delete):
                continue
            expect.add(sum(1 << k for k, j in enumerate(keep) if (z >> j) & 1))
        assert brute_cycles(rep.matrix) == expect


def test_labels_must_be_distinct():
    with pytest.raises(ValueError):
        Gf2Matrix(1, 2, [0], None, ("a", "a"))


def test_bit_helpers():
    assert gf2.bits_to_int("10") == 1
    assert gf2.int_to_bits(2, 3) == "010"
    assert gf2.mask_to_indices(0b1010) == [1, 3]
    assert gf2.indices_to_mask([1, 3]) == 0b1010
    with pytest.raises(ValueError):
        gf2.bits_to_int("12")


def test_min_cocycle_witness_in_row_space(rng):
    for _ in range(20):
        m = Gf2Matrix.from_lists(rng.integers(0, 2, size=(4, 7)).tolist())
        size, mask = gf2.min_cocycle(m)
        if size == INFINITY:
            assert gf2.rank(m) == 0
        else:
            assert bin(mask).count("1") == size and gf2.in_row_space(m, mask)
            assert min(bin(x).count("1") for x in itertools.islice(gf2.iter_cocycles(m), 1, None)) == size
