"""Shortest walks, cycles and T-joins with a prescribed parity vector.

Each edge carries a parity ``gamma(e)`` in GF(2)^t (an int bitmask) and a
set of edges has the XOR of its members' parities.  A cycle here is any
edge set with all degrees even, the empty set included.

Walks are found by breadth-first search on the product graph whose
vertices are pairs ``(v, beta)``; an edge ``uv`` of parity ``g`` joins
``(u, beta)`` to ``(v, beta ^ g)``.  Joins on two terminals combine one
walk with a cheapest "parity correction" by closed walks, and joins on
more terminals go through a parity matching on the terminals.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .gf2 import INFINITY
from .graph import MultiGraph
from .pfaffian.matching import MatchingInstance, parity_matching

MAX_TABLE_T = 4


def _check_t(t: int) -> None:
    if t < 0:
        raise ValueError("t must be non-negative")


def walk_distances(g: MultiGraph, gamma: Mapping[int, int], t: int, u: int) -> list[list[float]]:
    """``dist[v][beta]``: fewest edges in a ``(u, v)``-walk of parity ``beta``."""
    _check_t(t)
    nb = 1 << t
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n + 1)]
    for e in g.edges:
        p = gamma[e.id]
        adj[e.u].append((e.v, p))
        if not e.is_loop:
            adj[e.v].append((e.u, p))
    dist: list[list[float]] = [[INFINITY] * nb for _ in range(g.n + 1)]
    dist[u][0] = 0
    queue = deque([(u, 0)])
    while queue:
        x, beta = queue.popleft()
        d = dist[x][beta] + 1
        for y, p in adj[x]:
            b2 = beta ^ p
            if dist[y][b2] == INFINITY:
                dist[y][b2] = d
                queue.append((y, b2))
    return dist


def parity_walk(g: MultiGraph, gamma: Mapping[int, int], t: int, alpha: int, u: int, v: int) -> float:
    return walk_distances(g, gamma, t, u)[v][alpha]


def closed_walk_table(g: MultiGraph, gamma: Mapping[int, int], t: int) -> list[float]:
    """``w[beta]``: shortest closed walk of parity ``beta``; ``w[0] = 0`` (empty walk)."""
    nb = 1 << t
    w = [INFINITY] * nb
    w[0] = 0
    for u in g.vertices:
        du = walk_distances(g, gamma, t, u)[u]
        for beta in range(1, nb):
            if du[beta] < w[beta]:
                w[beta] = du[beta]
    return w


def wtilde_table(w: Sequence[float], t: int | None = None) -> list[float]:
    """``min sum(w[a] for a in S)`` over sets ``S`` of parities whose XOR is ``beta``.

    Computed as a 0/1 knapsack over the group, which is exact.
    """
    nb = len(w)
    if t is None:
        t = nb.bit_length() - 1
    if nb != 1 << t:
        raise ValueError("table length must be 2^t")
    if t > MAX_TABLE_T:
        raise ValueError(f"parity tables limited to t <= {MAX_TABLE_T}")
    best = [INFINITY] * nb
    best[0] = 0
    for a in range(1, nb):
        if w[a] == INFINITY:
            continue
        nxt = list(best)
        for beta in range(nb):
            cand = best[beta ^ a] + w[a]
            if cand < nxt[beta]:
                nxt[beta] = cand
        best = nxt
    return best


def cycle_table(g: MultiGraph, gamma: Mapping[int, int], t: int) -> list[float]:
    return wtilde_table(closed_walk_table(g, gamma, t), t)


def parity_cycle(g: MultiGraph, gamma: Mapping[int, int], t: int, alpha: int) -> float:
    return cycle_table(g, gamma, t)[alpha]


def _two_join_from(dist_uv: Sequence[float], wt: Sequence[float], alpha: int) -> float:
    return min(dist_uv[beta] + wt[alpha ^ beta] for beta in range(len(wt)))


def two_join(g: MultiGraph, gamma: Mapping[int, int], t: int, u: int, v: int, alpha: int) -> float:
    """Smallest ``{u, v}``-join of parity ``alpha`` (``u != v``)."""
    if u == v:
        raise ValueError("two_join needs distinct terminals; use parity_cycle for u == v")
    wt = cycle_table(g, gamma, t)
    return _two_join_from(walk_distances(g, gamma, t, u)[v], wt, alpha)


def join_size_bound(t: int, n: int) -> int:
    return (1 << t) * n


@dataclass(frozen=True)
class JoinGraph:
    """Terminal graph: one edge ``(u, v, beta, weight)`` per pair and finite parity class."""

    terminals: tuple[int, ...]
    t: int
    edges: tuple[tuple[int, int, int, int], ...]

    def matching_instance(self, alpha: int) -> MatchingInstance:
        pos = {v: k + 1 for k, v in enumerate(self.terminals)}
        edges = tuple((k, pos[u], pos[v]) for k, (u, v, _, _) in enumerate(self.edges))
        return MatchingInstance(
            MultiGraph(len(self.terminals), edges),
            {k: e[3] for k, e in enumerate(self.edges)},
            {k: e[2] for k, e in enumerate(self.edges)},
            self.t,
            alpha,
        )


def _terminals(terms: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(terms)))


def build_join_graph(g: MultiGraph, gamma: Mapping[int, int], t: int, terminals: Iterable[int]) -> JoinGraph:
    ts = _terminals(terminals)
    if len(ts) % 2:
        raise ValueError(f"no T-join exists for odd |T| = {len(ts)}")
    wt = cycle_table(g, gamma, t)
    nb = 1 << t
    edges = []
    for i, u in enumerate(ts):
        du = walk_distances(g, gamma, t, u)
        for v in ts[i + 1:]:
            for beta in range(nb):
                val = _two_join_from(du[v], wt, beta)
                if val != INFINITY:
                    edges.append((u, v, beta, int(val)))
    return JoinGraph(ts, t, tuple(edges))


def parity_join(
    g: MultiGraph,
    gamma: Mapping[int, int],
    t: int,
    terminals: Iterable[int],
    alpha: int,
    c: int = 2,
    reps: int = 1,
    rng: np.random.Generator | None = None,
) -> float:
    """Smallest ``T``-join of parity ``alpha``; randomized (one-sided) when ``|T| >= 4``."""
    ts = _terminals(terminals)
    if not ts:
        return parity_cycle(g, gamma, t, alpha)
    if len(ts) % 2:
        return INFINITY
    if len(ts) == 2:
        return two_join(g, gamma, t, ts[0], ts[1], alpha)
    jg = build_join_graph(g, gamma, t, ts)
    return parity_matching(jg.matching_instance(alpha), c, reps, rng)


def product_graph_size(g: MultiGraph, gamma: Mapping[int, int], t: int) -> tuple[int, int]:
    """Vertex and edge counts of the parity product graph (parallel duplicates merged)."""
    nb = 1 << t
    edges = set()
    for e in g.edges:
        for beta in range(nb):
            a, b = (e.u, beta), (e.v, beta ^ gamma[e.id])
            edges.add((min(a, b), max(a, b)))
    return nb * g.n, len(edges)

