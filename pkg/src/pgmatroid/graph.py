"""Undirected multigraphs with loops, parallel edges and stable edge ids."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple

from .gf2 import Gf2Matrix


class Edge(NamedTuple):
    id: int
    u: int
    v: int

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u


class NotIncidenceMatrix(ValueError):
    pass


@dataclass(frozen=True)
class MultiGraph:
    """Vertices are ``1..n``; edges keep their ids through contraction and deletion."""

    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        edges = tuple(Edge(int(i), int(u), int(v)) for i, u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        seen = set()
        for e in edges:
            if e.id in seen:
                raise ValueError(f"duplicate edge id {e.id}")
            seen.add(e.id)
            if not (1 <= e.u <= self.n and 1 <= e.v <= self.n):
                raise ValueError(f"edge {e.id} has an endpoint outside 1..{self.n}")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> MultiGraph:
        """Edges numbered 0, 1, ... in the order given."""
        return cls(n, tuple(Edge(i, u, v) for i, (u, v) in enumerate(pairs)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(e.id for e in self.edges)

    def edge(self, eid: int) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise KeyError(eid)

    def edge_index(self) -> dict[int, int]:
        """Edge id -> position in :attr:`edges` (and incidence column)."""
        return {e.id: k for k, e in enumerate(self.edges)}

    def loops(self) -> list[Edge]:
        return [e for e in self.edges if e.is_loop]

    def delete_edges(self, ids: Iterable[int]) -> MultiGraph:
        drop = set(ids)
        return MultiGraph(self.n, tuple(e for e in self.edges if e.id not in drop))

    def delta(self, xs: Iterable[int]) -> frozenset[int]:
        """Ids of edges with exactly one end in ``xs``."""
        xs = set(xs)
        return frozenset(e.id for e in self.edges if (e.u in xs) != (e.v in xs))

    def adjacency(self) -> dict[int, list[tuple[int, int]]]:
        """vertex -> [(neighbour, edge id)], loops listed once."""
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in self.vertices}
        for e in self.edges:
            adj[e.u].append((e.v, e.id))
            if not e.is_loop:
                adj[e.v].append((e.u, e.id))
        return adj

    def components(self) -> list[list[int]]:
        """Vertex lists of connected components, ordered by smallest vertex."""
        parent = list(range(self.n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            a, b = find(e.u), find(e.v)
            if a != b:
                parent[max(a, b)] = min(a, b)
        groups: dict[int, list[int]] = {}
        for v in self.vertices:
            groups.setdefault(find(v), []).append(v)
        return [groups[k] for k in sorted(groups)]

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def relabel(self, mapping: Mapping[int, int], n: int) -> MultiGraph:
        return MultiGraph(n, tuple(Edge(e.id, mapping[e.u], mapping[e.v]) for e in self.edges))


def incidence_matrix(g: MultiGraph) -> Gf2Matrix:
    """Vertex-by-edge incidence over GF(2); loops give zero columns."""
    rows = [0] * g.n
    for k, e in enumerate(g.edges):
        if not e.is_loop:
            rows[e.u - 1] |= 1 << k
            rows[e.v - 1] |= 1 << k
    return Gf2Matrix(g.n, g.m, rows, tuple(g.vertices), g.edge_ids)


def graph_from_incidence(a: Gf2Matrix) -> MultiGraph:
    """Inverse of :func:`incidence_matrix`; edge ``j`` gets id ``j``.

    Zero columns become loops at vertex 1.
    """
    edges = []
    for j, col in enumerate(a.columns()):
        ones = [i + 1 for i in range(a.nrows) if (col >> i) & 1]
        if len(ones) == 2:
            edges.append(Edge(j, ones[0], ones[1]))
        elif not ones:
            if a.nrows == 0:
                raise NotIncidenceMatrix("a graph needs at least one vertex to carry loops")
            edges.append(Edge(j, 1, 1))
        else:
            raise NotIncidenceMatrix(
                f"column {j} has {len(ones)} ones; not a graph incidence matrix"
            )
    return MultiGraph(a.nrows, tuple(edges))


def contract_edge(g: MultiGraph, eid: int) -> tuple[MultiGraph, dict[int, int]]:
    """Contract a non-loop edge.

    The merged vertex takes the smaller endpoint's rank; vertices are
    renumbered densely and the old -> new map is returned.
    """
    e = g.edge(eid)
    if e.is_loop:
        raise ValueError(f"cannot contract loop {eid}")
    keep, gone = min(e.u, e.v), max(e.u, e.v)
    vmap = {}
    for v in g.vertices:
        if v == gone:
            continue
        vmap[v] = v if v < gone else v - 1
    vmap[gone] = vmap[keep]
    edges = tuple(Edge(f.id, vmap[f.u], vmap[f.v]) for f in g.edges if f.id != eid)
    return MultiGraph(g.n - 1, edges), vmap
