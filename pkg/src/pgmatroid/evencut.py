"""Random-contraction solvers for even-cut problems.

Two variants are handled:

* the set variant ``(G; T_1..T_t)``: minimise ``|delta(X)|`` over non-empty
  proper ``X`` meeting every ``T_i`` evenly;
* the dimensional variant ``(G, tau, Sigma, alpha)``: minimise the size of a
  non-empty ``delta(X) ^ Sigma'`` with ``(Sigma', alpha')`` either
  ``(Sigma, alpha)`` or ``(empty, 0)`` and ``tau(X) = alpha'``.  These sets are
  exactly the non-empty cocycles of ``M(G, tau, Sigma, alpha)``.

Vectors in GF(2)^t are ints, bit ``i`` being coordinate ``i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import gf2, seeding
from .gf2 import Gf2Matrix
from .graph import MultiGraph, contract_edge, incidence_matrix

#: Largest t handled by the exhaustive base case (2^(2^t + 4) subsets).
MAX_T = 4


@dataclass(frozen=True)
class SetEvenCutInstance:
    graph: MultiGraph
    terminals: tuple[frozenset[int], ...] = ()

    def __post_init__(self):
        terms = tuple(frozenset(int(v) for v in ts) for ts in self.terminals)
        object.__setattr__(self, "terminals", terms)
        for i, ts in enumerate(terms, start=1):
            if len(ts) % 2:
                raise ValueError(f"T_{i} has odd cardinality {len(ts)}")
            bad = [v for v in ts if not 1 <= v <= self.graph.n]
            if bad:
                raise ValueError(f"T_{i} contains non-vertices {sorted(bad)}")

    @property
    def t(self) -> int:
        return len(self.terminals)

    def tau(self) -> list[int]:
        """Per-vertex membership vector (index ``v - 1``)."""
        out = [0] * self.graph.n
        for i, ts in enumerate(self.terminals):
            for v in ts:
                out[v - 1] |= 1 << i
        return out


@dataclass(frozen=True)
class EvenCutInstance:
    graph: MultiGraph
    t: int
    tau: tuple[int, ...]
    sigma: frozenset[int] = frozenset()
    alpha: int = 0

    def __post_init__(self):
        object.__setattr__(self, "tau", tuple(int(x) for x in self.tau))
        object.__setattr__(self, "sigma", frozenset(int(e) for e in self.sigma))
        if len(self.tau) != self.graph.n:
            raise ValueError(f"tau has {len(self.tau)} entries for {self.graph.n} vertices")
        limit = 1 << self.t
        if any(not 0 <= x < limit for x in self.tau) or not 0 <= self.alpha < limit:
            raise ValueError(f"parity vectors must lie in GF(2)^{self.t}")
        missing = self.sigma - set(self.graph.edge_ids)
        if missing:
            raise ValueError(f"Sigma contains unknown edges {sorted(missing)}")

    def tau_of(self, xs: Iterable[int]) -> int:
        acc = 0
        for v in xs:
            acc ^= self.tau[v - 1]
        return acc


@dataclass(frozen=True)
class CutResult:
    """A cut (set variant) or cocycle (dimensional variant) with its certificate.

    ``X`` is the vertex set; for the dimensional variant ``uses_sigma`` tells
    whether the pair ``(Sigma, alpha)`` was used (else ``(empty, 0)``).
    """

    size: int
    witness: frozenset[int]
    X: frozenset[int] = frozenset()
    uses_sigma: bool | None = None

    def key(self) -> tuple[int, tuple[int, ...]]:
        return (self.size, tuple(sorted(self.witness)))


def better(a: CutResult | None, b: CutResult | None) -> CutResult | None:
    """Deterministic minimum: size, then lexicographically smallest witness."""
    if a is None:
        return b
    if b is None:
        return a
    return b if b.key() < a.key() else a


def repetitions_for(epsilon: float) -> int:
    """Smallest ``c`` with ``exp(-24 c) <= epsilon``."""
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    return max(1, math.ceil(math.log(1 / epsilon) / 24))


def base_size(t: int) -> int:
    return (1 << t) + 4


# contraction kernel ---------------------------------------------------------


class _Kernel:
    """Precomputed bitmask view of a graph for repeated contraction runs.

    Edge positions are ranks of edge ids; ``inc[v]`` holds the positions of
    non-loop edges at vertex ``v`` (0-based), so the XOR of ``inc`` over a
    vertex class is exactly its cut.  Processing edges in a uniformly random
    order and skipping those that have become loops picks each contraction
    uniformly among the current non-loop edges.
    """

    def __init__(self, graph: MultiGraph, tau: list[int], sigma: Iterable[int], alpha: int, t: int, max_t: int):
        if t > max_t:
            raise ValueError(f"t = {t} exceeds the exhaustive base-case cap {max_t}")
        edges = sorted(graph.edges, key=lambda e: e.id)
        self.n = graph.n
        self.m = len(edges)
        # positions follow edge ids, so lexicographic order on id sets is a bit test
        self.ends = [(e.u - 1, e.v - 1) for e in edges]
        self.ids = tuple(e.id for e in edges)
        pos = {eid: k for k, eid in enumerate(self.ids)}
        inc = [0] * self.n
        for k, (u, v) in enumerate(self.ends):
            if u != v:
                inc[u] |= 1 << k
                inc[v] |= 1 << k
        self.inc = inc
        self.tau = tau
        self.sigma = gf2.indices_to_mask(pos[e] for e in sigma)
        self.alpha = alpha
        self.base = base_size(t)

    def ids_of(self, mask: int) -> frozenset[int]:
        return frozenset(self.ids[k] for k in gf2.mask_to_indices(mask))

    def run(self, rng: np.random.Generator | None, dimensional: bool) -> CutResult:
        n = self.n
        parent = list(range(n))
        inc = list(self.inc)
        tau = list(self.tau)
        members = [1 << i for i in range(n)]
        sigma, alpha, shift = self.sigma, self.alpha, 0
        k = n
        if rng is not None and k > self.base:
            ends = self.ends
            for pos in rng.permutation(self.m).tolist():
                if k <= self.base:
                    break
                u, v = ends[pos]
                while parent[u] != u:
                    u = parent[u]
                while parent[v] != v:
                    v = parent[v]
                if u == v:
                    continue
                # first endpoint plays the role of x
                if dimensional and (sigma >> pos) & 1:
                    sigma ^= inc[u]
                    alpha ^= tau[u]
                    shift ^= members[u]
                parent[v] = u
                inc[u] ^= inc[v]
                tau[u] ^= tau[v]
                members[u] |= members[v]
                k -= 1
        classes = [c for c in range(n) if parent[c] == c]
        if k > self.base:
            if dimensional:
                raise RuntimeError("ran out of non-loop edges; is the instance connected?")
            return self._empty_even_cut(classes, tau, members)
        return self._exhaustive(classes, inc, tau, members, sigma, alpha, shift, dimensional)

    def _exhaustive(self, classes, inc, tau, members, sigma, alpha, shift, dimensional) -> CutResult:
        best_size = math.inf
        best = None
        cut = 0
        tx = 0
        xs = 0
        full = (1 << len(classes)) - 1
        for i in range(1 << len(classes)):
            if i:
                c = (i & -i).bit_length() - 1
                cut ^= inc[classes[c]]
                tx ^= tau[classes[c]]
                xs ^= 1 << c
            if dimensional:
                if tx == 0 and cut:
                    w = cut.bit_count()
                    if w < best_size or (w == best_size and self._lex_less(cut, best[0])):
                        best_size, best = w, (cut, xs, False)
                if tx == alpha:
                    sym = cut ^ sigma
                    if sym:
                        w = sym.bit_count()
                        if w < best_size or (w == best_size and self._lex_less(sym, best[0])):
                            best_size, best = w, (sym, xs, True)
            elif tx == 0 and xs and xs != full:
                w = cut.bit_count()
                if w < best_size or (w == best_size and self._lex_less(cut, best[0])):
                    best_size, best = w, (cut, xs, False)
        if best is None:
            raise ValueError("instance is infeasible")
        mask, xs, used = best
        vmask = 0
        for j, c in enumerate(classes):
            if (xs >> j) & 1:
                vmask |= members[c]
        if used:
            vmask ^= shift
        return CutResult(
            size=best_size,
            witness=self.ids_of(mask),
            X=frozenset(v + 1 for v in gf2.mask_to_indices(vmask)),
            uses_sigma=used if dimensional else None,
        )

    @staticmethod
    def _lex_less(a: int, b: int) -> bool:
        # equal sizes: the set owning the smallest differing id is smaller
        d = a ^ b
        return bool(a & d & -d)

    def _empty_even_cut(self, classes, tau, members) -> CutResult:
        # more than t + 1 classes and no edges: some proper class subset is even
        m = Gf2Matrix.from_columns(max(1, max(tau).bit_length()), [tau[c] for c in classes])
        for vec in gf2.null_space_basis(m):
            if vec != (1 << len(classes)) - 1:
                break
        else:
            raise ValueError("instance is infeasible")
        vmask = 0
        for j, c in enumerate(classes):
            if (vec >> j) & 1:
                vmask |= members[c]
        return CutResult(0, frozenset(), frozenset(v + 1 for v in gf2.mask_to_indices(vmask)))


# set variant ----------------------------------------------------------------


def set_feasible(inst: SetEvenCutInstance) -> bool:
    """True iff V(G) is not a circuit of the terminal-membership matroid."""
    n = inst.graph.n
    if n < 2:
        return False
    rows = [gf2.indices_to_mask(v - 1 for v in ts) for ts in inst.terminals]
    a = Gf2Matrix(len(rows), n, rows)
    return n - gf2.rank(a) >= 2


def set_contract(inst: SetEvenCutInstance, eid: int) -> SetEvenCutInstance:
    g, vmap = contract_edge(inst.graph, eid)
    e = inst.graph.edge(eid)
    z = vmap[e.u]
    terms = []
    for ts in inst.terminals:
        new = {vmap[v] for v in ts if v not in (e.u, e.v)}
        if (e.u in ts) != (e.v in ts):
            new.add(z)
        terms.append(frozenset(new))
    return SetEvenCutInstance(g, tuple(terms))


def _set_kernel(inst: SetEvenCutInstance, max_t: int) -> _Kernel:
    return _Kernel(inst.graph, inst.tau(), (), 0, inst.t, max_t)


def set_min_even_cut_exhaustive(inst: SetEvenCutInstance) -> CutResult:
    """Exact minimum by enumerating every vertex subset (no contraction)."""
    k = _set_kernel(inst, max_t=inst.t)
    k.base = max(k.base, inst.graph.n)
    return k.run(None, dimensional=False)


def set_random_contraction(inst: SetEvenCutInstance, rng: np.random.Generator, max_t: int = MAX_T) -> CutResult:
    """One run of random contraction; always returns a valid even cut."""
    return _set_kernel(inst, max_t).run(rng, dimensional=False)


def set_min_even_cut(
    inst: SetEvenCutInstance, c: int, rng: np.random.Generator, max_t: int = MAX_T
) -> CutResult:
    """Best of ``c * n^4`` contraction runs (one run if already at base size)."""
    kernel = _set_kernel(inst, max_t)
    n = inst.graph.n
    runs = 1 if n <= kernel.base else c * n**4
    best = None
    for _ in range(runs):
        best = better(best, kernel.run(rng, dimensional=False))
    return best


# dimensional variant -------------------------------------------------------


def t_labels(t: int) -> tuple[str, ...]:
    return tuple(f"t{i + 1}" for i in range(t))


def evencut_incidence(inst: EvenCutInstance) -> Gf2Matrix:
    """Rows ``(sigma; V(G))``, columns ``(E(G); T)``: ``[[sigma, alpha], [A(G), B]]``."""
    g = inst.graph
    a = incidence_matrix(g)
    m = g.m
    idx = g.edge_index()
    sigma_row = gf2.indices_to_mask(idx[e] for e in inst.sigma) | (inst.alpha << m)
    rows = [sigma_row] + [r | (inst.tau[v] << m) for v, r in enumerate(a.rows)]
    return Gf2Matrix(
        g.n + 1,
        m + inst.t,
        rows,
        ("sigma",) + tuple(g.vertices),
        g.edge_ids + t_labels(inst.t),
    )


def evencut_matroid(inst: EvenCutInstance) -> gf2.MatroidRep:
    """Representation of ``M(G, tau, Sigma, alpha)``, i.e. the incidence matroid with T contracted."""
    return gf2.contract_delete(evencut_incidence(inst), contract=t_labels(inst.t))


def dim_feasible(inst: EvenCutInstance) -> bool:
    a = evencut_incidence(inst)
    tcols = a.select_columns(range(inst.graph.m, a.ncols))
    return gf2.rank(a) - gf2.rank(tcols) > 0


def certify_cocycle(inst: EvenCutInstance, edges: Iterable[int]) -> CutResult | None:
    """Express an edge set as ``delta(X) ^ Sigma'``; None if it is not a cocycle."""
    a = evencut_incidence(inst)
    idx = inst.graph.edge_index()
    edges = frozenset(edges)
    target = gf2.indices_to_mask(idx[e] for e in edges)
    combo = gf2.solve_row_combination(a, target)
    if combo is None:
        return None
    xs = frozenset(v for v in inst.graph.vertices if (combo >> v) & 1)
    return CutResult(len(edges), edges, xs, bool(combo & 1))


def dim_contract(inst: EvenCutInstance, eid: int) -> EvenCutInstance:
    """Contract ``e``; for ``e`` in Sigma the edge's first endpoint is ``x``."""
    g = inst.graph
    e = g.edge(eid)
    if e.is_loop:
        raise ValueError(f"cannot contract loop {eid}")
    sigma, alpha = inst.sigma, inst.alpha
    if eid in sigma:
        sigma = sigma ^ g.delta([e.u])
        alpha ^= inst.tau[e.u - 1]
    h, vmap = contract_edge(g, eid)
    tau = [0] * h.n
    for v in g.vertices:
        tau[vmap[v] - 1] ^= inst.tau[v - 1]
    return EvenCutInstance(h, inst.t, tuple(tau), sigma - {eid}, alpha)


def _dim_kernel(inst: EvenCutInstance, max_t: int) -> _Kernel:
    return _Kernel(inst.graph, list(inst.tau), inst.sigma, inst.alpha, inst.t, max_t)


def dim_min_cocycle_exhaustive(inst: EvenCutInstance) -> CutResult | None:
    """Exact minimum over all ``X`` and both pairs; None when infeasible."""
    k = _dim_kernel(inst, max_t=inst.t)
    k.base = max(k.base, inst.graph.n)
    try:
        return k.run(None, dimensional=True)
    except ValueError:
        return None


def dim_random_contraction(inst: EvenCutInstance, rng: np.random.Generator, max_t: int = MAX_T) -> CutResult:
    """One run of the revised contraction algorithm on a feasible connected instance."""
    return _dim_kernel(inst, max_t).run(rng, dimensional=True)


def dim_min_cocycle(
    inst: EvenCutInstance, c: int, rng: np.random.Generator, max_t: int = MAX_T
) -> CutResult:
    """Best cocycle over ``c * n^4`` runs; a single exact run at base size."""
    kernel = _dim_kernel(inst, max_t)
    n = inst.graph.n
    runs = 1 if n <= kernel.base else c * n**4
    best = None
    for _ in range(runs):
        best = better(best, kernel.run(rng, dimensional=True))
    return best


@dataclass(frozen=True)
class Reduction:
    """Connected sub-instances whose best cocycle is the answer.

    When every component is a single vertex ``instances`` is empty and
    ``direct`` holds the answer (None if the matroid has rank 0).
    """

    instances: tuple[EvenCutInstance, ...]
    direct: CutResult | None = None
    betas: tuple[int, ...] = field(default=())


def _span(vectors: Iterable[int]) -> list[int]:
    span = {0}
    for v in vectors:
        if v not in span:
            span |= {s ^ v for s in span}
    return sorted(span)


def _echelon(vectors: Iterable[int]) -> list[int]:
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return basis


def _reduce(x: int, basis: list[int]) -> int:
    """Canonical representative of ``x`` modulo the span of ``basis``."""
    for b in basis:
        x = min(x, x ^ b)
    return x


def connectivity_reduce(inst: EvenCutInstance) -> Reduction:
    g = inst.graph
    if g.n == 0:
        return Reduction((), _direct_answer(inst), ())
    comps = g.components()
    if len(comps) == 1 and g.n > 1:
        return Reduction((inst,), None, (0,))
    heads = [comp[0] for comp in comps]
    merged = heads[0]
    head_set = set(heads)
    # identify the component heads into ``merged``; the other heads become new isolated vertices
    redirect = {v: (merged if v in head_set else v) for v in g.vertices}
    tau = list(inst.tau)
    tau[merged - 1] = inst.tau_of(heads)
    for comp in comps[1:]:
        tau[comp[0] - 1] = inst.tau_of(comp)
    isolated = set(heads[1:])
    core = [v for v in g.vertices if v not in isolated]
    if len(core) == 1:
        return Reduction((), _direct_answer(inst), ())
    renum = {v: k for k, v in enumerate(core, start=1)}
    vmap = {v: renum[redirect[v]] for v in g.vertices}
    core_graph = g.relabel(vmap, len(core))
    shifts = [tau[v - 1] for v in heads[1:]]
    # flipping a whole component shifts tau(X) by its total, so tau only matters modulo those shifts
    basis = _echelon(shifts)
    core_tau = tuple(_reduce(tau[v - 1], basis) for v in core)
    betas = _span(shifts)
    out = tuple(
        EvenCutInstance(core_graph, inst.t, core_tau, inst.sigma, inst.alpha ^ beta) for beta in betas
    )
    return Reduction(out, None, tuple(betas))


def _direct_answer(inst: EvenCutInstance) -> CutResult | None:
    rep = evencut_matroid(inst)
    size, mask = gf2.min_cocycle(rep)
    if size == math.inf:
        return None
    ground = rep.ground
    edges = [ground[j] for j in gf2.mask_to_indices(mask)]
    return certify_cocycle(inst, edges)


def solve_evencut(
    inst: EvenCutInstance,
    c: int,
    seed: np.random.SeedSequence,
    max_t: int = MAX_T,
) -> CutResult | None:
    """Minimum cocycle of ``M(G, tau, Sigma, alpha)``; None if the rank is 0.

    Sub-instance ``i`` of the connectivity reduction draws from
    ``child(seed, i)``.
    """
    if not dim_feasible(inst):
        return None
    red = connectivity_reduce(inst)
    if not red.instances:
        return red.direct
    best = None
    for i, sub in enumerate(red.instances):
        if not dim_feasible(sub):
            continue
        rng = seeding.generator(seeding.child(seed, i))
        best = better(best, dim_min_cocycle(sub, c, rng, max_t))
    if best is None:
        return None
    return certify_cocycle(inst, best.witness)
