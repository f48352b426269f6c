"""Signed grafts: labelled graphs encoding low-rank perturbations of graphic matroids.

An ``(s, t)``-signed-graft ``(G, S, T, B, C, D)`` has incidence matrix::

            E(G)   T
      S   [  C     D ]
      V   [ A(G)   B ]

and the matroid of interest is that matrix with the ``T`` columns contracted.
Over GF(2) a negated identity is just the identity, so ``D = I`` below
stands for ``-I``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import gf2
from .evencut import EvenCutInstance, t_labels
from .gf2 import Gf2Matrix
from .graph import MultiGraph, incidence_matrix


def s_labels(s: int) -> tuple[str, ...]:
    return tuple(f"s{i + 1}" for i in range(s))


@dataclass(frozen=True)
class SignedGraft:
    graph: MultiGraph
    B: Gf2Matrix  # V(G) x T
    C: Gf2Matrix  # S x E(G)
    D: Gf2Matrix  # S x T

    def __post_init__(self):
        n, m = self.graph.n, self.graph.m
        s, t = self.C.nrows, self.B.ncols
        if self.B.nrows != n:
            raise ValueError(f"B must have {n} rows, has {self.B.nrows}")
        if self.C.ncols != m:
            raise ValueError(f"C must have {m} columns, has {self.C.ncols}")
        if self.D.shape != (s, t):
            raise ValueError(f"D must be {s}x{t}, is {self.D.nrows}x{self.D.ncols}")

    @property
    def s(self) -> int:
        return self.C.nrows

    @property
    def t(self) -> int:
        return self.B.ncols

    @property
    def S(self) -> tuple[str, ...]:
        return s_labels(self.s)

    @property
    def T(self) -> tuple[str, ...]:
        return t_labels(self.t)


def graft_incidence(sg: SignedGraft) -> Gf2Matrix:
    """The ``(s + |V|) x (|E| + t)`` block matrix, labelled ``S + V`` by ``E + T``."""
    a = incidence_matrix(sg.graph)
    m = sg.graph.m
    top = [c | (d << m) for c, d in zip(sg.C.rows, sg.D.rows)]
    bottom = [r | (b << m) for r, b in zip(a.rows, sg.B.rows)]
    return Gf2Matrix(
        sg.s + sg.graph.n,
        m + sg.t,
        top + bottom,
        sg.S + tuple(sg.graph.vertices),
        sg.graph.edge_ids + sg.T,
    )


def graft_matroid(sg: SignedGraft) -> gf2.MatroidRep:
    """Representation of the graft matroid with ``T`` contracted."""
    return gf2.contract_delete(graft_incidence(sg), contract=sg.T)


def from_perturbation(g: MultiGraph, p: Gf2Matrix) -> SignedGraft:
    """The ``(t, t)``-graft ``(G, S, S, B, C, I)`` with ``P = B C`` and ``t = rank(P)``.

    Columns of ``P`` follow ``g.edges``; rows follow vertices ``1..n``.
    """
    if p.shape != (g.n, g.m):
        raise ValueError(f"P must be {g.n}x{g.m} to match the graph, got {p.nrows}x{p.ncols}")
    b, c = gf2.factor_low_rank(p)
    t = b.ncols
    return SignedGraft(
        g,
        Gf2Matrix(g.n, t, b.rows),
        Gf2Matrix(t, g.m, c.rows),
        Gf2Matrix.identity(t),
    )


def _selectors(k: int):
    return range(1 << k)


def reduce_s(sg: SignedGraft) -> list[SignedGraft]:
    """One ``(1, t)``-graft per ``y`` in GF(2)^S (bit ``i`` of the index selects row ``i``).

    The cogirth of the input (``T`` contracted) is the minimum over the outputs.
    """
    out = []
    for y in _selectors(sg.s):
        c_row = 0
        d_row = 0
        for i in gf2.mask_to_indices(y):
            c_row ^= sg.C.rows[i]
            d_row ^= sg.D.rows[i]
        out.append(
            SignedGraft(
                sg.graph,
                sg.B,
                Gf2Matrix(1, sg.graph.m, [c_row]),
                Gf2Matrix(1, sg.t, [d_row]),
            )
        )
    return out


def reduce_t(sg: SignedGraft) -> list[SignedGraft]:
    """One ``(s, 1)``-graft per ``x`` in GF(2)^T (bit ``j`` of the index selects column ``j``).

    The girth of the input (``T`` contracted) is the minimum over the outputs.
    """
    out = []
    for x in _selectors(sg.t):
        bx = [(r & x).bit_count() & 1 for r in sg.B.rows]
        dx = [(r & x).bit_count() & 1 for r in sg.D.rows]
        out.append(SignedGraft(sg.graph, Gf2Matrix(sg.graph.n, 1, bx), sg.C, Gf2Matrix(sg.s, 1, dx)))
    return out


def to_evencut(sg: SignedGraft) -> EvenCutInstance:
    """Even-cut instance whose optimum is the cogirth of a ``(1, t)``-graft."""
    if sg.s != 1:
        raise ValueError(f"to_evencut needs s = 1, got s = {sg.s}")
    ids = sg.graph.edge_ids
    sigma = frozenset(ids[k] for k in gf2.mask_to_indices(sg.C.rows[0]))
    return EvenCutInstance(sg.graph, sg.t, sg.B.rows, sigma, sg.D.rows[0])
