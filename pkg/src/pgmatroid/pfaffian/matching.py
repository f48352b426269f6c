"""Minimum-weight perfect matchings with a prescribed parity vector.

A matching ``M`` is feasible when the XOR of the edge parities equals
``alpha``.  The optimum is read off a random evaluation of the Pfaffian of
the Tutte matrix over the group ring: the ``y^alpha`` part of the Pfaffian
is a polynomial in ``z`` whose smallest degree is the optimum weight,
unless the random evaluation cancels it (which only ever overestimates).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from ..gf2 import INFINITY
from ..graph import MultiGraph
from .dag import pfaffian_dag
from .ring import GroupRingPoly, SkewRingMatrix

NAIVE_MAX_N = 12


@dataclass(frozen=True)
class MatchingInstance:
    graph: MultiGraph
    weights: Mapping[int, int]
    parities: Mapping[int, int]
    t: int
    alpha: int = 0

    def __post_init__(self):
        ids = set(self.graph.edge_ids)
        if set(self.weights) != ids or set(self.parities) != ids:
            raise ValueError("weights and parities must be given for every edge")
        if any(w < 0 for w in self.weights.values()):
            raise ValueError("edge weights must be non-negative")
        limit = 1 << self.t
        if any(not 0 <= p < limit for p in self.parities.values()):
            raise ValueError(f"parities must lie in GF(2)^{self.t}")
        if not 0 <= self.alpha < limit:
            raise ValueError(f"alpha must lie in GF(2)^{self.t}")


def _pairings(vs: list[int]):
    if not vs:
        yield []
        return
    a = vs[0]
    for i in range(1, len(vs)):
        rest = vs[1:i] + vs[i + 1:]
        for p in _pairings(rest):
            yield [(a, vs[i])] + p


def sign_of_matching(m: Iterable[tuple[int, int]], n: int | None = None) -> int:
    """``(-1)^(number of crossing pairs)`` for a perfect matching of ``1..n``."""
    pairs = [tuple(sorted(p)) for p in m]
    covered = [v for p in pairs for v in p]
    if n is None:
        n = len(covered)
    if sorted(covered) != list(range(1, n + 1)) or any(u == v for u, v in pairs):
        raise ValueError("not a perfect matching of 1..n")
    crossings = 0
    for (u1, v1), (u2, v2) in itertools.combinations(pairs, 2):
        if u1 < u2 < v1 < v2 or u2 < u1 < v2 < v1:
            crossings += 1
    return -1 if crossings % 2 else 1


def pfaffian_naive(d: SkewRingMatrix) -> GroupRingPoly:
    """Sum over all pairings of ``1..n``; exponential, for checking only."""
    if d.n > NAIVE_MAX_N:
        raise ValueError(f"naive Pfaffian limited to n <= {NAIVE_MAX_N}")
    if d.n % 2:
        return GroupRingPoly.zero(d.t)
    total = GroupRingPoly.zero(d.t)
    for p in _pairings(list(range(1, d.n + 1))):
        term = GroupRingPoly.scalar(d.t, sign_of_matching(p, d.n))
        for a, b in p:
            term = term * d[a, b]
            if not term:
                break
        total = total + term
    return total


def tutte_matrix(inst: MatchingInstance, xvals: Mapping[int, int]) -> SkewRingMatrix:
    """Entry ``(u, v)``, ``u < v``, is the sum of ``x_e y^gamma(e) z^w(e)`` over edges ``uv``."""
    t = inst.t
    upper: dict[tuple[int, int], dict] = {}
    for e in inst.graph.edges:
        if e.is_loop:
            continue
        key = (min(e.u, e.v), max(e.u, e.v))
        terms = upper.setdefault(key, {})
        mono = (inst.parities[e.id], inst.weights[e.id])
        terms[mono] = terms.get(mono, 0) + int(xvals[e.id])
    return SkewRingMatrix(inst.graph.n, t, {k: GroupRingPoly(t, v) for k, v in upper.items()})


def dedupe_parallel(inst: MatchingInstance) -> MatchingInstance:
    """Keep one lightest edge per (vertex pair, parity); drop loops."""
    best: dict[tuple[int, int, int], tuple[int, int]] = {}
    for e in inst.graph.edges:
        if e.is_loop:
            continue
        key = (min(e.u, e.v), max(e.u, e.v), inst.parities[e.id])
        cand = (inst.weights[e.id], e.id)
        if key not in best or cand < best[key]:
            best[key] = cand
    keep = {eid for _, eid in best.values()}
    edges = tuple(e for e in inst.graph.edges if e.id in keep)
    return MatchingInstance(
        MultiGraph(inst.graph.n, edges),
        {e.id: inst.weights[e.id] for e in edges},
        {e.id: inst.parities[e.id] for e in edges},
        inst.t,
        inst.alpha,
    )


def reps_for(epsilon: float, c: int = 2) -> int:
    """Runs needed so that ``(1/(2c))^reps <= epsilon``."""
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    return max(1, math.ceil(math.log(1 / epsilon) / math.log(2 * c)))


def evaluate_once(inst: MatchingInstance, c: int, rng: np.random.Generator) -> float:
    """One random evaluation: mindeg of the ``y^alpha`` part, or ``inf``."""
    n = inst.graph.n
    ids = inst.graph.edge_ids
    draws = rng.integers(1, c * n, size=len(ids), endpoint=True) if ids else []
    pf = pfaffian_dag(tutte_matrix(inst, dict(zip(ids, (int(x) for x in draws)))))
    return pf.mindeg(inst.alpha)


def parity_matching(
    inst: MatchingInstance, c: int = 2, reps: int = 1, rng: np.random.Generator | None = None
) -> float:
    """Minimum over ``reps`` random evaluations; never below the true optimum."""
    if c < 1:
        raise ValueError("c must be a positive integer")
    n = inst.graph.n
    if n % 2:
        return INFINITY
    if n == 0:
        return 0 if inst.alpha == 0 else INFINITY
    if rng is None:
        rng = np.random.default_rng(0)
    inst = dedupe_parallel(inst)
    best = INFINITY
    for _ in range(reps):
        best = min(best, evaluate_once(inst, c, rng))
    return best


def brute_force_matching(inst: MatchingInstance) -> float:
    """Exact optimum by enumerating perfect matchings of the multigraph."""
    n = inst.graph.n
    if n % 2:
        return INFINITY
    by_pair: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for e in inst.graph.edges:
        if not e.is_loop:
            by_pair.setdefault((min(e.u, e.v), max(e.u, e.v)), []).append(
                (inst.weights[e.id], inst.parities[e.id])
            )
    best = INFINITY

    def go(free: Sequence[int], weight: int, parity: int):
        nonlocal best
        if not free:
            if parity == inst.alpha:
                best = min(best, weight)
            return
        a = free[0]
        for i in range(1, len(free)):
            for w, p in by_pair.get((a, free[i]), ()):
                go(free[1:i] + free[i + 1:], weight + w, parity ^ p)

    go(tuple(inst.graph.vertices), 0, 0)
    return best
