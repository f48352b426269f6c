"""Slow reference implementations used to check the fast algorithms.

Each function here recomputes an optimum by plain enumeration and shares
no code with the algorithm it checks.
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping, Sequence

from .gf2 import INFINITY, MAX_ORACLE_BITS, OracleSizeError
from .graph import MultiGraph


def integer_determinant(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def walk_lengths_by_layers(
    g: MultiGraph, gamma: Mapping[int, int], t: int, alpha: int, u: int, v: int, max_len: int | None = None
) -> float:
    """Shortest ``(u, v)``-walk of parity ``alpha`` by growing reachable state sets one step at a time."""
    if max_len is None:
        max_len = (1 << t) * max(g.n, 1)
    frontier = {(u, 0)}
    for length in range(max_len + 1):
        if (v, alpha) in frontier:
            return length
        nxt = set()
        for x, beta in frontier:
            for e in g.edges:
                if e.u == x:
                    nxt.add((e.v, beta ^ gamma[e.id]))
                if e.v == x:
                    nxt.add((e.u, beta ^ gamma[e.id]))
        frontier = nxt
    return INFINITY


def min_join(
    g: MultiGraph, gamma: Mapping[int, int], terminals: Iterable[int], alpha: int
) -> float:
    """Smallest edge set whose odd-degree vertices are exactly ``terminals`` and whose parity is ``alpha``.

    Enumerates all ``2^|E|`` subsets in Gray-code order.
    """
    m = g.m
    if m > MAX_ORACLE_BITS:
        raise OracleSizeError(f"subset enumeration limited to {MAX_ORACLE_BITS} edges")
    target = 0
    for v in set(terminals):
        target ^= 1 << v
    ends = [0 if e.is_loop else (1 << e.u) ^ (1 << e.v) for e in g.edges]
    pars = [gamma[e.id] for e in g.edges]
    odd, par, size = 0, 0, 0
    best = 0 if (target == 0 and alpha == 0) else INFINITY
    chosen = 0
    for i in range(1, 1 << m):
        k = (i & -i).bit_length() - 1
        chosen ^= 1 << k
        size += 1 if (chosen >> k) & 1 else -1
        odd ^= ends[k]
        par ^= pars[k]
        if odd == target and par == alpha and size < best:
            best = size
    return best


def min_parity_cycle(g: MultiGraph, gamma: Mapping[int, int], alpha: int) -> float:
    return min_join(g, gamma, (), alpha)


def min_even_cut_set(g: MultiGraph, terminals: Sequence[Iterable[int]]) -> float:
    """Smallest non-empty cut ``delta(X)`` with ``|X & T_i|`` even for all ``i``."""
    if g.n > MAX_ORACLE_BITS:
        raise OracleSizeError("vertex subset enumeration too large")
    tsets = [set(ts) for ts in terminals]
    best = INFINITY
    # X and its complement give the same cut, so fix vertex n outside X
    for mask in range(1 << max(g.n - 1, 0)):
        xs = {v for v in g.vertices if (mask >> (v - 1)) & 1}
        if any(len(xs & ts) % 2 for ts in tsets):
            continue
        cut = g.delta(xs)
        if cut and len(cut) < best:
            best = len(cut)
    return best


def log_choose(n: int, k: int) -> float:
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
