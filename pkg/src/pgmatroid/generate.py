"""Random instances for tests, self-checks and the ``gen`` subcommand.

All generators take a ``numpy.random.Generator`` so callers control
reproducibility.
"""

from __future__ import annotations

import numpy as np

from . import gf2
from .evencut import EvenCutInstance, SetEvenCutInstance
from .gf2 import Gf2Matrix
from .graph import Edge, MultiGraph, incidence_matrix
from .pfaffian.matching import MatchingInstance
from .pfaffian.ring import GroupRingPoly, SkewRingMatrix


def random_multigraph(
    rng: np.random.Generator, n: int, m: int, connected: bool = True, loop_prob: float = 0.1
) -> MultiGraph:
    """``m`` edges on ``n`` vertices; a random spanning tree first when ``connected``."""
    if connected and n >= 1 and m < n - 1:
        raise ValueError(f"a connected graph on {n} vertices needs at least {n - 1} edges")
    pairs = []
    if connected:
        order = [int(v) + 1 for v in rng.permutation(n)]
        for k in range(1, n):
            pairs.append((order[k], order[int(rng.integers(k))]))
    while len(pairs) < m:
        u = int(rng.integers(1, n + 1))
        if n == 1 or rng.random() < loop_prob:
            v = u
        else:
            v = int(rng.integers(1, n))
            v += v >= u
        pairs.append((u, v))
    perm = rng.permutation(len(pairs))
    return MultiGraph(n, tuple(Edge(i, *pairs[int(k)]) for i, k in enumerate(perm)))


def random_full_rank(rng: np.random.Generator, rows: int, cols: int) -> Gf2Matrix:
    """Uniform ``rows x cols`` matrix of rank ``min(rows, cols)`` (by rejection)."""
    k = min(rows, cols)
    while True:
        m = Gf2Matrix(rows, cols, [int(x) for x in rng.integers(0, 1 << cols, size=rows)] if cols else [0] * rows)
        if gf2.rank(m) == k:
            return m


def random_rank_matrix(rng: np.random.Generator, rows: int, cols: int, t: int) -> Gf2Matrix:
    """A ``rows x cols`` matrix of rank exactly ``t``."""
    if t > min(rows, cols):
        raise ValueError(f"rank {t} impossible for a {rows}x{cols} matrix")
    if t == 0:
        return Gf2Matrix.zeros(rows, cols)
    return random_full_rank(rng, rows, t) @ random_full_rank(rng, t, cols)


def perturbed_instance(rng: np.random.Generator, r: int, m: int, t: int) -> tuple[Gf2Matrix, Gf2Matrix]:
    """``(A, P)``: incidence matrix of a connected multigraph and a rank-``t`` perturbation."""
    g = random_multigraph(rng, r, m)
    return incidence_matrix(g).with_labels(None, None), random_rank_matrix(rng, r, m, t)


def random_parities(rng: np.random.Generator, g: MultiGraph, t: int) -> dict[int, int]:
    return {e.id: int(rng.integers(0, 1 << t)) for e in g.edges}


def random_matching_instance(
    rng: np.random.Generator, n: int, m: int, t: int, max_weight: int = 5
) -> MatchingInstance:
    g = random_multigraph(rng, n, m, connected=False, loop_prob=0.05)
    return MatchingInstance(
        g,
        {e.id: int(rng.integers(0, max_weight + 1)) for e in g.edges},
        random_parities(rng, g, t),
        t,
        int(rng.integers(0, 1 << t)),
    )


def random_set_evencut(rng: np.random.Generator, n: int, m: int, t: int) -> SetEvenCutInstance:
    g = random_multigraph(rng, n, m)
    sets = []
    for _ in range(t):
        k = 2 * int(rng.integers(0, n // 2 + 1))
        sets.append(frozenset(int(v) + 1 for v in rng.choice(n, size=k, replace=False)))
    return SetEvenCutInstance(g, tuple(sets))


def random_dim_evencut(
    rng: np.random.Generator, n: int, m: int, t: int, connected: bool = True
) -> EvenCutInstance:
    g = random_multigraph(rng, n, m, connected=connected)
    tau = tuple(int(x) for x in rng.integers(0, 1 << t, size=n))
    sigma = frozenset(e.id for e in g.edges if rng.random() < 0.3)
    return EvenCutInstance(g, t, tau, sigma, int(rng.integers(0, 1 << t)))


def random_ring_element(
    rng: np.random.Generator, t: int, terms: int, max_degree: int = 3, max_coef: int = 5
) -> GroupRingPoly:
    out: dict[tuple[int, int], int] = {}
    for _ in range(terms):
        key = (int(rng.integers(0, 1 << t)), int(rng.integers(0, max_degree + 1)))
        out[key] = out.get(key, 0) + int(rng.integers(-max_coef, max_coef + 1))
    return GroupRingPoly(t, out)


def random_skew_matrix(rng: np.random.Generator, n: int, t: int, density: float = 1.0) -> SkewRingMatrix:
    """Entries above the diagonal have up to ``2^t`` terms; some are left zero when ``density < 1``."""
    upper = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if rng.random() < density:
                upper[(i, j)] = random_ring_element(rng, t, int(rng.integers(1, (1 << t) + 1)))
    return SkewRingMatrix(n, t, upper)


def random_scalar_skew(rng: np.random.Generator, n: int, max_coef: int = 9) -> list[list[int]]:
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = int(rng.integers(-max_coef, max_coef + 1))
            rows[i][j], rows[j][i] = x, -x
    return rows
