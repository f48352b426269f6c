"""Girth and cogirth of ``M(A + P)`` for a graph incidence matrix ``A`` and low-rank ``P``.

Both drivers factor ``P = B C`` into a signed graft, split it into ``2^t``
single-row or single-column grafts, and solve each one combinatorially:

* girth: a shortest circuit either avoids the extra column (a parity
  cycle through some edge ``f``, found as ``f`` plus a parity join on the
  ends of ``f``) or uses it (a parity ``T``-join on the support of ``B``);
* cogirth: each branch is a dimensional even-cut instance, solved by
  random contraction after the connectivity reduction.

The error budget ``epsilon`` is shared among the randomized sub-calls by
a union bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from . import gf2, seeding
from .evencut import MAX_T, CutResult, better, repetitions_for, solve_evencut
from .gf2 import INFINITY, Gf2Matrix
from .graft import SignedGraft, from_perturbation, graft_matroid, reduce_s, reduce_t, to_evencut
from .graph import MultiGraph, graph_from_incidence
from .parityjoin import parity_cycle, parity_join, two_join
from .pfaffian.matching import reps_for


@dataclass(frozen=True)
class SolverConfig:
    epsilon: float = 1e-6
    seed: int = 0
    t_cap: int = MAX_T
    matching_c: int = 2
    matching_reps: Optional[int] = None  # overrides the epsilon-derived count
    contraction_c: Optional[int] = None  # overrides the epsilon-derived count

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise ValueError("epsilon must lie in (0, 1)")
        if self.seed < 0 or self.seed >= 1 << 64:
            raise ValueError("seed must be a 64-bit non-negative integer")
        if self.matching_c < 1:
            raise ValueError("matching_c must be positive")

    def reps_for_branch(self, branches: int) -> int:
        if self.matching_reps is not None:
            return self.matching_reps
        return reps_for(self.epsilon / branches, self.matching_c)

    def contraction_for_branch(self, branches: int) -> int:
        if self.contraction_c is not None:
            return self.contraction_c
        return repetitions_for(self.epsilon / branches)


def _edge_parities(sg: SignedGraft) -> dict[int, int]:
    """``gamma(e)``: column ``e`` of ``C`` as an ``s``-bit mask."""
    cols = sg.C.columns()
    return {eid: cols[k] for k, eid in enumerate(sg.graph.edge_ids)}


def simple_check(rep: gf2.MatroidRep) -> int | None:
    """1 if some element is a loop, 2 if two elements are parallel, else None."""
    cols = rep.matrix.columns()
    if any(c == 0 for c in cols):
        return 1
    if len(set(cols)) < len(cols):
        return 2
    return None


def density_forces_parallel(n: int, m: int, s: int) -> bool:
    """Pigeonhole: more edges than (vertex pair or loop) x parity classes means a repeated column.

    Loops are counted as one extra class, which the plain pair count misses.
    """
    return m > (1 << s) * (math.comb(n, 2) + 1)


def girth_graft_t1(
    sg: SignedGraft, cfg: SolverConfig = SolverConfig(), rng_seed=None, branches: int = 1
) -> float:
    """Girth of a single-column graft with its column contracted."""
    if sg.t != 1:
        raise ValueError(f"girth_graft_t1 needs t = 1, got t = {sg.t}")
    g = sg.graph
    if g.m == 0:
        return INFINITY
    rep = graft_matroid(sg)
    if any(col == 0 for col in rep.matrix.columns()):
        return 1
    if density_forces_parallel(g.n, g.m, sg.s):
        return 2
    quick = simple_check(rep)
    if quick is not None:
        return quick

    gamma = _edge_parities(sg)
    s = sg.s
    k1 = INFINITY
    for e in g.edges:
        rest = g.delete_edges([e.id])
        if e.is_loop:
            tail = parity_cycle(rest, gamma, s, gamma[e.id])
        else:
            tail = two_join(rest, gamma, s, e.u, e.v, gamma[e.id])
        k1 = min(k1, 1 + tail)

    terminals = gf2.mask_to_indices(sg.B.column(0) if sg.B.nrows else 0)
    terminals = [v + 1 for v in terminals]
    alpha = sg.D.column(0) if sg.D.nrows else 0
    if rng_seed is None:
        rng_seed = seeding.root(cfg.seed)
    rng = seeding.generator(rng_seed)
    k2 = parity_join(g, gamma, s, terminals, alpha, cfg.matching_c, cfg.reps_for_branch(branches), rng)
    if k2 == 0:
        return k1
    return min(k1, k2)


def _check_pair(a: Gf2Matrix, p: Gf2Matrix) -> MultiGraph:
    if a.shape != p.shape:
        raise ValueError(f"A is {a.nrows}x{a.ncols} but P is {p.nrows}x{p.ncols}")
    return graph_from_incidence(a)


def _graft_of(a: Gf2Matrix, p: Gf2Matrix, cfg: SolverConfig) -> SignedGraft:
    g = _check_pair(a, p)
    sg = from_perturbation(g, p)
    if sg.t > cfg.t_cap:
        raise ValueError(f"rank(P) = {sg.t} exceeds the cap {cfg.t_cap}")
    return sg


def girth_perturbed(a: Gf2Matrix, p: Gf2Matrix, cfg: SolverConfig = SolverConfig()) -> float:
    sg = _graft_of(a, p, cfg)
    branches = reduce_t(sg)
    root = seeding.root(cfg.seed)
    best = INFINITY
    for x, branch in enumerate(branches):
        val = girth_graft_t1(branch, cfg, seeding.child(root, x), len(branches))
        best = min(best, val)
    return best


@dataclass(frozen=True)
class CogirthResult:
    value: float
    witness: frozenset[int]  # column indices of A + P


def cogirth_perturbed(a: Gf2Matrix, p: Gf2Matrix, cfg: SolverConfig = SolverConfig()) -> CogirthResult:
    sg = _graft_of(a, p, cfg)
    t = sg.t
    budget = cfg.contraction_for_branch(4**t)
    root = seeding.root(cfg.seed)
    best: CutResult | None = None
    for y, branch in enumerate(reduce_s(sg)):
        res = solve_evencut(to_evencut(branch), budget, seeding.child(root, y), cfg.t_cap)
        best = better(best, res)
    if best is None:
        return CogirthResult(INFINITY, frozenset())
    total = a + p
    mask = gf2.indices_to_mask(best.witness)
    if not mask or not gf2.in_row_space(total, mask):
        raise RuntimeError("internal error: cocycle witness is not in the row space of A + P")
    return CogirthResult(best.size, frozenset(best.witness))


def validate_cocycle(a: Gf2Matrix, p: Gf2Matrix, witness, size) -> bool:
    """The witness is non-empty, has the stated size and lies in the row space of ``A + P``."""
    w = frozenset(witness)
    return bool(w) and len(w) == size and gf2.in_row_space(a + p, gf2.indices_to_mask(w))
