"""Pfaffians by counting weighted paths in a layered acyclic digraph.

The digraph for an ``n x n`` skew matrix has a source ``s``, two sinks
``t-``/``t+`` and inner vertices ``(b, h, c, L)`` with ``b`` in {0, 1} a
sign bit, ``h`` the current head vertex, ``c`` the current vertex and
``L`` in 0..n-1 the layer.  Every edge goes from layer ``L - 1`` to layer
``L``, so sweeping layers in order is a topological sweep.  The Pfaffian
is the weighted path count into ``t+`` minus the count into ``t-``.

The exact edge rules are listed in ``docs/dag_rules.md``; :class:`DagRules`
keeps the two choices that were settled by comparison against the
matching expansion, so that deliberately wrong variants can be built for
negative controls.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Hashable

from .ring import GroupRingPoly, SkewRingMatrix

SOURCE = "s"
SINK_MINUS = "t-"
SINK_PLUS = "t+"


@dataclass(frozen=True)
class DagRules:
    d_step_parity: int = 1  # layers entered through matrix-entry edges
    flip_forward: bool = True  # entering from a smaller vertex flips the sign bit


DEFAULT_RULES = DagRules()


@dataclass(frozen=True)
class PfaffianDag:
    """Vertices are numbered: 0 is ``s``, then the inner vertices layer by layer,
    then ``t-``, ``t+``; increasing index is therefore a topological order.

    ``incoming[v]`` lists ``(u, weight)`` pairs where ``weight`` is ``None``
    for the ring unit or an upper-triangular entry position ``(i, j)``.
    """

    n: int
    rules: DagRules
    incoming: tuple[tuple[tuple[int, tuple[int, int] | None], ...], ...]

    @property
    def num_vertices(self) -> int:
        return len(self.incoming)

    @property
    def sink_minus(self) -> int:
        return self.num_vertices - 2

    @property
    def sink_plus(self) -> int:
        return self.num_vertices - 1

    def index(self, label: Hashable) -> int:
        n = self.n
        if label == SOURCE:
            return 0
        if label == SINK_MINUS:
            return self.sink_minus
        if label == SINK_PLUS:
            return self.sink_plus
        b, h, c, layer = label
        return 1 + ((layer * 2 + b) * n + h - 1) * n + c - 1

    def label(self, idx: int) -> Hashable:
        if idx == 0:
            return SOURCE
        if idx == self.sink_minus:
            return SINK_MINUS
        if idx == self.sink_plus:
            return SINK_PLUS
        n = self.n
        k, c = divmod(idx - 1, n)
        k, h = divmod(k, n)
        layer, b = divmod(k, 2)
        return (b, h + 1, c + 1, layer)

    def edges(self):
        """Yield ``(u_label, v_label, weight)``."""
        for v, ins in enumerate(self.incoming):
            for u, w in ins:
                yield self.label(u), self.label(v), w

    @property
    def num_edges(self) -> int:
        return sum(len(x) for x in self.incoming)

    def max_in_degree(self) -> int:
        return max((len(x) for x in self.incoming), default=0)

    def is_acyclic(self) -> bool:
        """Kahn's algorithm; independent of the layer structure."""
        out: list[list[int]] = [[] for _ in self.incoming]
        indeg = [len(x) for x in self.incoming]
        for v, ins in enumerate(self.incoming):
            for u, _ in ins:
                out[u].append(v)
        stack = [v for v, d in enumerate(indeg) if d == 0]
        seen = 0
        while stack:
            u = stack.pop()
            seen += 1
            for v in out[u]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    stack.append(v)
        return seen == self.num_vertices

    def longest_path(self) -> int:
        """Edge count of a longest directed path (assumes acyclic)."""
        out: list[list[int]] = [[] for _ in self.incoming]
        indeg = [len(x) for x in self.incoming]
        for v, ins in enumerate(self.incoming):
            for u, _ in ins:
                out[u].append(v)
        depth = [0] * self.num_vertices
        stack = [v for v, d in enumerate(indeg) if d == 0]
        while stack:
            u = stack.pop()
            for v in out[u]:
                depth[v] = max(depth[v], depth[u] + 1)
                indeg[v] -= 1
                if indeg[v] == 0:
                    stack.append(v)
        return max(depth, default=0)

    def weights_valid(self) -> bool:
        """Every weight is the unit or an in-range entry position."""
        for ins in self.incoming:
            for _, w in ins:
                if w is None:
                    continue
                i, j = w
                if not (1 <= i < j <= self.n):
                    return False
        return True


@functools.lru_cache(maxsize=32)
def _build(n: int, rules: DagRules) -> PfaffianDag:
    total = 2 * n**3 + 3
    incoming: list[list] = [[] for _ in range(total)]

    def idx(b, h, c, layer):
        return 1 + ((layer * 2 + b) * n + h - 1) * n + c - 1

    flip = rules.flip_forward
    for b in (0, 1):
        for h in range(1, n + 1):
            for c in range(1, n + 1):
                for layer in range(n):
                    v = idx(b, h, c, layer)
                    ins = incoming[v]
                    if layer == 0:
                        # rule 1: the source starts a new pair at an odd vertex
                        if b == 0 and h == c and h % 2 == 1 and h < n:
                            ins.append((0, None))
                        continue
                    if layer % 2 == rules.d_step_parity:
                        # rule 2: match the current vertex c with a partner a
                        if c > h:
                            for a in range(1, n + 1):
                                if a == c:
                                    continue
                                if a < c:
                                    nb = 1 - b if flip else b
                                    ins.append((idx(nb, h, a, layer - 1), (a, c)))
                                else:
                                    nb = b if flip else 1 - b
                                    ins.append((idx(nb, h, a, layer - 1), (c, a)))
                        continue
                    if c % 2 == 0:
                        # rule 3: step down from an even vertex
                        if h < c - 1:
                            ins.append((idx(1 - b, h, c - 1, layer - 1), None))
                    else:
                        # rule 4: step up from an odd vertex
                        if h < c and c + 1 <= n:
                            ins.append((idx(b, h, c + 1, layer - 1), None))
                        # rule 5: close the current pair and open a new head
                        if c == h:
                            for a in range(1, h):
                                ins.append((idx(1 - b, a, a + 1, layer - 1), None))
    # rules 6 and 7: finish at the last layer on a closed pair
    for a in range(1, n, 2):
        incoming[total - 2].append((idx(0, a, a + 1, n - 1), None))
        incoming[total - 1].append((idx(1, a, a + 1, n - 1), None))
    return PfaffianDag(n, rules, tuple(tuple(x) for x in incoming))


def build_dag(d: SkewRingMatrix | int, rules: DagRules = DEFAULT_RULES) -> PfaffianDag:
    """The path-counting digraph for matrices of this size (structure depends only on ``n``)."""
    n = d if isinstance(d, int) else d.n
    if n < 1:
        raise ValueError("the digraph needs n >= 1")
    return _build(n, rules)


# --- evaluation -------------------------------------------------------------
#
# Each f(v) is a vector over the 2^t y-classes of integer polynomials in z.
# A z-polynomial is packed into one Python int with K bits per coefficient
# (Kronecker substitution z -> 2^K), so ring products become single big-int
# multiplications.  K is chosen from an a-priori bound on every coefficient
# that can appear, which keeps the signed digits from overlapping.


def _coefficient_budget(n: int, d: SkewRingMatrix) -> int:
    """Upper bound on any |coefficient| of any f(v) for this matrix.

    Each path has at most ``n + 1`` edges and every in-degree is at most
    ``n``, so there are at most ``n^(n+1)`` paths into a vertex; each path
    weight has l1-norm at most ``L^(n+1)`` with ``L`` the largest entry norm.
    """
    norm = max((e.l1_norm() for e in d.nonzero_upper().values()), default=1)
    return n ** (n + 1) * max(norm, 1) ** (n + 1)


def _pack(poly: GroupRingPoly, k: int) -> list[tuple[int, int]]:
    by_class: dict[int, int] = {}
    for (beta, deg), coef in poly.terms.items():
        by_class[beta] = by_class.get(beta, 0) + (coef << (k * deg))
    return [(beta, v) for beta, v in sorted(by_class.items()) if v]


def _unpack(x: int, k: int) -> dict[int, int]:
    out = {}
    mask = (1 << k) - 1
    half = 1 << (k - 1)
    deg = 0
    while x:
        digit = x & mask
        if digit >= half:
            digit -= 1 << k
        if digit:
            out[deg] = digit
        x = (x - digit) >> k
        deg += 1
    return out


def _sweep(dag: PfaffianDag, d: SkewRingMatrix):
    if d.n != dag.n:
        raise ValueError(f"matrix is {d.n}x{d.n} but the digraph was built for n={dag.n}")
    nb = 1 << d.t
    k = _coefficient_budget(d.n, d).bit_length() + 2
    packed = {pos: _pack(v, k) for pos, v in d.nonzero_upper().items()}
    f: list[list[int] | None] = [None] * dag.num_vertices
    one = [0] * nb
    one[0] = 1
    f[0] = one
    for v in range(1, dag.num_vertices):
        acc = None
        for u, w in dag.incoming[v]:
            fu = f[u]
            if fu is None:
                continue
            if w is None:
                if acc is None:
                    acc = list(fu)
                else:
                    for beta in range(nb):
                        acc[beta] += fu[beta]
                continue
            entry = packed.get(w)
            if not entry:
                continue
            if acc is None:
                acc = [0] * nb
            for beta in range(nb):
                x = fu[beta]
                if x:
                    for b2, p in entry:
                        acc[beta ^ b2] += x * p
        if acc is not None and any(acc):
            f[v] = acc
    return f, k


def _to_poly(vec: list[int] | None, t: int, k: int) -> GroupRingPoly:
    terms = {}
    if vec is not None:
        for beta, x in enumerate(vec):
            for deg, coef in _unpack(x, k).items():
                terms[(beta, deg)] = coef
    return GroupRingPoly(t, terms)


def pfaffian_dag(d: SkewRingMatrix, rules: DagRules = DEFAULT_RULES) -> GroupRingPoly:
    """Pfaffian of ``d`` by a single layered sweep over the path-counting digraph."""
    if d.n % 2:
        return GroupRingPoly.zero(d.t)
    if d.n == 0:
        return GroupRingPoly.one(d.t)
    dag = build_dag(d.n, rules)
    f, k = _sweep(dag, d)
    return _to_poly(f[dag.sink_plus], d.t, k) - _to_poly(f[dag.sink_minus], d.t, k)


def dag_values(d: SkewRingMatrix, rules: DagRules = DEFAULT_RULES) -> dict[Hashable, GroupRingPoly]:
    """Every non-zero ``f(v)`` of the sweep, keyed by vertex label (for inspection)."""
    dag = build_dag(d.n, rules)
    f, k = _sweep(dag, d)
    return {dag.label(v): _to_poly(vec, d.t, k) for v, vec in enumerate(f) if vec is not None}
