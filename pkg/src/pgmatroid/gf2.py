"""GF(2) linear algebra and binary matroid oracles.

Rows are stored as Python ints used as bitsets: bit ``j`` of a row is the
entry in column ``j``.  Nothing outside this module should depend on that
layout; use :meth:`Gf2Matrix.to_lists`, indexing, or the mask helpers.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Sequence

INFINITY = math.inf

#: Default cap on the number of enumerated bits for the brute-force oracles.
#: At 24 bits the enumeration is roughly 16M XORs; pass ``max_bits`` to override.
MAX_ORACLE_BITS = 24

#: Girth by null-space enumeration is used when the nullity is at most this.
NULLSPACE_ENUM_BITS = 20


class OracleSizeError(ValueError):
    """Raised when an exhaustive oracle is asked to enumerate too many bits."""


def _check_labels(labels, size, what):
    if labels is None:
        return None
    labels = tuple(labels)
    if len(labels) != size:
        raise ValueError(f"{what} labels: expected {size}, got {len(labels)}")
    if len(set(labels)) != size:
        raise ValueError(f"{what} labels are not distinct")
    return labels


class Gf2Matrix:
    """Immutable dense matrix over GF(2) with optional row/column labels."""

    __slots__ = ("nrows", "ncols", "_rows", "row_labels", "col_labels")

    def __init__(
        self,
        nrows: int,
        ncols: int,
        rows: Iterable[int] | None = None,
        row_labels: Sequence[Hashable] | None = None,
        col_labels: Sequence[Hashable] | None = None,
    ):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        rows = (0,) * nrows if rows is None else tuple(int(r) for r in rows)
        if len(rows) != nrows:
            raise ValueError(f"expected {nrows} rows, got {len(rows)}")
        limit = 1 << ncols
        for r in rows:
            if r < 0 or r >= limit:
                raise ValueError("row bitmask does not fit the column count")
        self.nrows = nrows
        self.ncols = ncols
        self._rows = rows
        self.row_labels = _check_labels(row_labels, nrows, "row")
        self.col_labels = _check_labels(col_labels, ncols, "column")

    # construction -------------------------------------------------------

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], ncols: int | None = None, **labels) -> Gf2Matrix:
        entries = [list(r) for r in entries]
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        rows = []
        for r in entries:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")
            mask = 0
            for j, x in enumerate(r):
                if x not in (0, 1):
                    raise ValueError(f"entry {x!r} is not a GF(2) value")
                if x:
                    mask |= 1 << j
            rows.append(mask)
        return cls(len(rows), ncols, rows, **labels)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, **labels) -> Gf2Matrix:
        return cls(nrows, ncols, None, **labels)

    @classmethod
    def identity(cls, n: int, **labels) -> Gf2Matrix:
        return cls(n, n, [1 << i for i in range(n)], **labels)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[int], **labels) -> Gf2Matrix:
        """Build from column bitmasks (bit ``i`` = row ``i``)."""
        rows = [0] * nrows
        for j, col in enumerate(columns):
            if col >> nrows:
                raise ValueError("column bitmask does not fit the row count")
            i = 0
            while col:
                if col & 1:
                    rows[i] |= 1 << j
                col >>= 1
                i += 1
        return cls(nrows, len(columns), rows, **labels)

    def with_labels(self, row_labels=None, col_labels=None) -> Gf2Matrix:
        return Gf2Matrix(self.nrows, self.ncols, self._rows, row_labels, col_labels)

    # access -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def rows(self) -> tuple[int, ...]:
        """Row bitmasks (bit ``j`` = column ``j``)."""
        return self._rows

    def row(self, i: int) -> int:
        return self._rows[i]

    def column(self, j: int) -> int:
        """Column ``j`` as a bitmask over rows."""
        col = 0
        for i, r in enumerate(self._rows):
            if (r >> j) & 1:
                col |= 1 << i
        return col

    def columns(self) -> list[int]:
        return [self.column(j) for j in range(self.ncols)]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(ij)
        return (self._rows[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self._rows]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Gf2Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.nrows, self.ncols, self._rows))

    def __repr__(self) -> str:
        body = "; ".join(format_row(r, self.ncols) for r in self._rows)
        return f"Gf2Matrix({self.nrows}x{self.ncols}: {body})"

    # arithmetic ---------------------------------------------------------

    def __add__(self, other: Gf2Matrix) -> Gf2Matrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return Gf2Matrix(
            self.nrows,
            self.ncols,
            [a ^ b for a, b in zip(self._rows, other._rows)],
            self.row_labels,
            self.col_labels,
        )

    __sub__ = __add__

    def __matmul__(self, other: Gf2Matrix) -> Gf2Matrix:
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for r in self._rows:
            acc = 0
            k = 0
            while r:
                if r & 1:
                    acc ^= other._rows[k]
                r >>= 1
                k += 1
            out.append(acc)
        return Gf2Matrix(self.nrows, other.ncols, out, self.row_labels, other.col_labels)

    def transpose(self) -> Gf2Matrix:
        return Gf2Matrix(self.ncols, self.nrows, self.columns(), self.col_labels, self.row_labels)

    @property
    def T(self) -> Gf2Matrix:
        return self.transpose()

    def select_columns(self, idx: Sequence[int]) -> Gf2Matrix:
        rows = []
        for r in self._rows:
            mask = 0
            for k, j in enumerate(idx):
                if (r >> j) & 1:
                    mask |= 1 << k
            rows.append(mask)
        labels = None if self.col_labels is None else [self.col_labels[j] for j in idx]
        return Gf2Matrix(self.nrows, len(idx), rows, self.row_labels, labels)

    def select_rows(self, idx: Sequence[int]) -> Gf2Matrix:
        labels = None if self.row_labels is None else [self.row_labels[i] for i in idx]
        return Gf2Matrix(len(idx), self.ncols, [self._rows[i] for i in idx], labels, self.col_labels)

    def apply(self, vec: int) -> int:
        """Matrix-vector product ``M x`` with ``x`` a column-index bitmask."""
        out = 0
        for i, r in enumerate(self._rows):
            if (r & vec).bit_count() & 1:
                out |= 1 << i
        return out


def hstack(*blocks: Gf2Matrix) -> Gf2Matrix:
    nrows = blocks[0].nrows
    rows = [0] * nrows
    shift = 0
    for b in blocks:
        if b.nrows != nrows:
            raise ValueError("hstack needs equal row counts")
        for i, r in enumerate(b.rows):
            rows[i] |= r << shift
        shift += b.ncols
    return Gf2Matrix(nrows, shift, rows)


def vstack(*blocks: Gf2Matrix) -> Gf2Matrix:
    ncols = blocks[0].ncols
    rows: list[int] = []
    for b in blocks:
        if b.ncols != ncols:
            raise ValueError("vstack needs equal column counts")
        rows.extend(b.rows)
    return Gf2Matrix(len(rows), ncols, rows)


def format_row(mask: int, ncols: int) -> str:
    return "".join("1" if (mask >> j) & 1 else "0" for j in range(ncols))


def bits_to_int(text: str) -> int:
    """Parse a bit string where character ``i`` is coordinate ``i``."""
    value = 0
    for i, ch in enumerate(text):
        if ch == "1":
            value |= 1 << i
        elif ch != "0":
            raise ValueError(f"invalid bit character {ch!r}")
    return value


def int_to_bits(value: int, length: int) -> str:
    return format_row(value, length)


def mask_to_indices(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def indices_to_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


# elimination ----------------------------------------------------------


def _rref(rows: list[int], ncols: int) -> tuple[list[int], list[int]]:
    """In-place style RREF on a list of row masks; returns (rows, pivots)."""
    rows = list(rows)
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        bit = 1 << col
        for r in range(top, len(rows)):
            if rows[r] & bit:
                break
        else:
            continue
        rows[top], rows[r] = rows[r], rows[top]
        prow = rows[top]
        for k in range(len(rows)):
            if k != top and rows[k] & bit:
                rows[k] ^= prow
        pivots.append(col)
        top += 1
        if top == len(rows):
            break
    return rows, pivots


def row_reduce(m: Gf2Matrix) -> tuple[Gf2Matrix, list[int]]:
    """Reduced row-echelon form and the (increasing) pivot columns."""
    rows, pivots = _rref(list(m.rows), m.ncols)
    return Gf2Matrix(m.nrows, m.ncols, rows, None, m.col_labels), pivots


def rank(m: Gf2Matrix) -> int:
    basis: dict[int, int] = {}
    for r in m.rows:
        while r:
            top = r.bit_length() - 1
            if top in basis:
                r ^= basis[top]
            else:
                basis[top] = r
                break
    return len(basis)


def row_space_basis(m: Gf2Matrix) -> list[int]:
    rows, pivots = _rref(list(m.rows), m.ncols)
    return rows[: len(pivots)]


def null_space_basis(m: Gf2Matrix) -> list[int]:
    """Basis of ``{x : M x = 0}`` as column-index bitmasks."""
    rows, pivots = _rref(list(m.rows), m.ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        vec = 1 << free
        for k, p in enumerate(pivots):
            if (rows[k] >> free) & 1:
                vec |= 1 << p
        basis.append(vec)
    return basis


def solve_row_combination(m: Gf2Matrix, target: int) -> int | None:
    """Find a row subset (bitmask) whose XOR equals ``target``, or None."""
    basis: dict[int, tuple[int, int]] = {}
    for i, r in enumerate(m.rows):
        combo = 1 << i
        while r:
            top = r.bit_length() - 1
            if top in basis:
                br, bc = basis[top]
                r ^= br
                combo ^= bc
            else:
                basis[top] = (r, combo)
                break
    combo = 0
    while target:
        top = target.bit_length() - 1
        if top not in basis:
            return None
        br, bc = basis[top]
        target ^= br
        combo ^= bc
    return combo


def in_row_space(m: Gf2Matrix, vec: int) -> bool:
    return solve_row_combination(m, vec) is not None


def factor_low_rank(p: Gf2Matrix) -> tuple[Gf2Matrix, Gf2Matrix]:
    """Factor ``P = B C`` with inner dimension ``rank(P)``.

    ``C`` is the non-zero part of the RREF of ``P``; since ``C`` is the
    identity on its pivot columns, ``B[i, k] = P[i, pivot_k]``.
    """
    rows, pivots = _rref(list(p.rows), p.ncols)
    k = len(pivots)
    c = Gf2Matrix(k, p.ncols, rows[:k], None, p.col_labels)
    brows = []
    for r in p.rows:
        mask = 0
        for idx, col in enumerate(pivots):
            if (r >> col) & 1:
                mask |= 1 << idx
        brows.append(mask)
    b = Gf2Matrix(p.nrows, k, brows, p.row_labels, None)
    return b, c


# matroids -------------------------------------------------------------


@dataclass(frozen=True)
class MatroidRep:
    """A binary matroid given by a GF(2) matrix; the ground set labels its columns."""

    matrix: Gf2Matrix

    @property
    def ground(self) -> tuple:
        if self.matrix.col_labels is None:
            return tuple(range(self.matrix.ncols))
        return self.matrix.col_labels

    @classmethod
    def of(cls, m: Gf2Matrix | MatroidRep) -> MatroidRep:
        if isinstance(m, MatroidRep):
            return m
        if m.col_labels is None:
            m = m.with_labels(m.row_labels, tuple(range(m.ncols)))
        return cls(m)

    def __len__(self) -> int:
        return self.matrix.ncols


def _as_matrix(m: Gf2Matrix | MatroidRep) -> Gf2Matrix:
    return m.matrix if isinstance(m, MatroidRep) else m


def contract_delete(
    m: Gf2Matrix | MatroidRep,
    contract: Iterable[Hashable] = (),
    delete: Iterable[Hashable] = (),
) -> MatroidRep:
    """Representation of ``M / contract \\ delete``.

    Pivots on a maximal independent subset of ``contract`` and drops those
    rows; dependent contracted elements (loops afterwards) are removed, which
    is the same as deleting them.
    """
    rep = MatroidRep.of(m)
    mat = rep.matrix
    ground = rep.ground
    pos = {g: j for j, g in enumerate(ground)}
    contract = list(dict.fromkeys(contract))
    delete = list(dict.fromkeys(delete))
    for e in itertools.chain(contract, delete):
        if e not in pos:
            raise KeyError(f"{e!r} is not in the ground set")
    if set(contract) & set(delete):
        raise ValueError("contract and delete sets must be disjoint")

    rows = list(mat.rows)
    used_rows: set[int] = set()
    for e in contract:
        bit = 1 << pos[e]
        pivot = next((i for i in range(len(rows)) if i not in used_rows and rows[i] & bit), None)
        if pivot is None:
            continue
        prow = rows[pivot]
        for i in range(len(rows)):
            if i != pivot and rows[i] & bit:
                rows[i] ^= prow
        used_rows.add(pivot)

    gone = {pos[e] for e in contract} | {pos[e] for e in delete}
    keep_cols = [j for j in range(mat.ncols) if j not in gone]
    keep_rows = [i for i in range(len(rows)) if i not in used_rows]
    row_labels = None if mat.row_labels is None else [mat.row_labels[i] for i in keep_rows]
    reduced = Gf2Matrix(len(keep_rows), mat.ncols, [rows[i] for i in keep_rows], row_labels)
    reduced = reduced.select_columns(keep_cols)
    return MatroidRep(reduced.with_labels(row_labels, [ground[j] for j in keep_cols]))


def dual_representation(m: Gf2Matrix | MatroidRep) -> MatroidRep:
    """Standard-form representation of the dual matroid.

    With ``M`` row-reduced to ``[I | X]`` on its pivot columns, the dual is
    represented by ``[X^T | I]`` on the same column positions.
    """
    rep = MatroidRep.of(m)
    mat = rep.matrix
    rows, pivots = _rref(list(mat.rows), mat.ncols)
    free = [j for j in range(mat.ncols) if j not in set(pivots)]
    out = []
    for f in free:
        vec = 1 << f
        for k, p in enumerate(pivots):
            if (rows[k] >> f) & 1:
                vec |= 1 << p
        out.append(vec)
    return MatroidRep(Gf2Matrix(len(free), mat.ncols, out, None, rep.ground))


def iter_cycles(m: Gf2Matrix | MatroidRep) -> Iterator[int]:
    """All cycles (including the empty one) as column bitmasks."""
    yield from _span(null_space_basis(_as_matrix(m)))


def iter_cocycles(m: Gf2Matrix | MatroidRep) -> Iterator[int]:
    """All cocycles (row-space vectors, including zero) as column bitmasks."""
    yield from _span(row_space_basis(_as_matrix(m)))


def _span(basis: list[int]) -> Iterator[int]:
    vec = 0
    yield vec
    for i in range(1, 1 << len(basis)):
        vec ^= basis[(i & -i).bit_length() - 1]
        yield vec


def _min_weight_in_span(basis: list[int]) -> tuple[float, int]:
    best, arg = INFINITY, 0
    vec = 0
    for i in range(1, 1 << len(basis)):
        vec ^= basis[(i & -i).bit_length() - 1]
        w = vec.bit_count()
        if w < best:
            best, arg = w, vec
    return best, arg


def girth_oracle(m: Gf2Matrix | MatroidRep, max_bits: int = MAX_ORACLE_BITS) -> float:
    """Size of the smallest non-empty cycle, by exhaustive enumeration."""
    mat = _as_matrix(m)
    if mat.ncols > max_bits:
        raise OracleSizeError(f"girth oracle limited to {max_bits} columns, got {mat.ncols}")
    basis = null_space_basis(mat)
    if len(basis) <= NULLSPACE_ENUM_BITS:
        return _min_weight_in_span(basis)[0]
    cols = mat.columns()
    for size in range(1, mat.ncols + 1):
        for combo in itertools.combinations(cols, size):
            acc = 0
            for c in combo:
                acc ^= c
            if not acc:
                return size
    return INFINITY


def min_cocycle(m: Gf2Matrix | MatroidRep, max_bits: int = MAX_ORACLE_BITS) -> tuple[float, int]:
    """Smallest non-empty cocycle as ``(size, column bitmask)``."""
    basis = row_space_basis(_as_matrix(m))
    if len(basis) > max_bits:
        raise OracleSizeError(f"cogirth oracle limited to rank {max_bits}, got {len(basis)}")
    return _min_weight_in_span(basis)


def cogirth_oracle(m: Gf2Matrix | MatroidRep, max_bits: int = MAX_ORACLE_BITS) -> float:
    """Minimum support of a non-zero row-space vector; INFINITY at rank 0."""
    return min_cocycle(m, max_bits)[0]
