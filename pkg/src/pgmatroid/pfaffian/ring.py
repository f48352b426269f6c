"""The group ring Z[y_1..y_t, z] / <y_i^2 - 1>.

An element is a finite map ``(beta, d) -> coefficient`` standing for
``sum coef * y^beta * z^d`` with ``beta`` in GF(2)^t (an int bitmask).
Coefficients are Python ints, so there is no overflow.
"""

from __future__ import annotations

import math
from typing import Mapping, Sequence


class GroupRingPoly:
    __slots__ = ("t", "terms")

    def __init__(self, t: int, terms: Mapping[tuple[int, int], int] | None = None):
        if t < 0:
            raise ValueError("t must be non-negative")
        self.t = t
        clean = {}
        limit = 1 << t
        for (beta, d), coef in (terms or {}).items():
            if not 0 <= beta < limit:
                raise ValueError(f"y-exponent {beta} outside GF(2)^{t}")
            if d < 0:
                raise ValueError("z-degree must be non-negative")
            if coef:
                clean[(int(beta), int(d))] = int(coef)
        self.terms = clean

    @classmethod
    def zero(cls, t: int) -> GroupRingPoly:
        return cls(t)

    @classmethod
    def one(cls, t: int) -> GroupRingPoly:
        return cls(t, {(0, 0): 1})

    @classmethod
    def monomial(cls, t: int, beta: int = 0, degree: int = 0, coef: int = 1) -> GroupRingPoly:
        return cls(t, {(beta, degree): coef})

    @classmethod
    def scalar(cls, t: int, value: int) -> GroupRingPoly:
        return cls(t, {(0, 0): value})

    def _check(self, other: GroupRingPoly) -> None:
        if other.t != self.t:
            raise ValueError(f"ring mismatch: t={self.t} vs t={other.t}")

    def _coerce(self, other) -> GroupRingPoly:
        if isinstance(other, GroupRingPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return GroupRingPoly.scalar(self.t, other)
        return NotImplemented

    def __add__(self, other) -> GroupRingPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return GroupRingPoly(self.t, out)

    __radd__ = __add__

    def __neg__(self) -> GroupRingPoly:
        return GroupRingPoly(self.t, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> GroupRingPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> GroupRingPoly:
        return (-self) + other

    def __mul__(self, other) -> GroupRingPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, int], int] = {}
        for (b1, d1), c1 in self.terms.items():
            for (b2, d2), c2 in other.terms.items():
                k = (b1 ^ b2, d1 + d2)
                out[k] = out.get(k, 0) + c1 * c2
        return GroupRingPoly(self.t, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = GroupRingPoly.scalar(self.t, other)
        if not isinstance(other, GroupRingPoly):
            return NotImplemented
        return self.t == other.t and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.t, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (beta, d), c in sorted(self.terms.items()):
            mono = "".join(f"y{i + 1}" for i in range(self.t) if (beta >> i) & 1)
            if d:
                mono += "z" if d == 1 else f"z^{d}"
            parts.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(parts)

    def coefficients(self, beta: int) -> dict[int, int]:
        """The z-polynomial multiplying ``y^beta``, as ``degree -> coefficient``."""
        return {d: c for (b, d), c in self.terms.items() if b == beta}

    def mindeg(self, beta: int) -> float:
        """Smallest z-degree in the ``y^beta`` part; ``inf`` if that part is zero."""
        degs = [d for (b, d) in self.terms if b == beta]
        return min(degs) if degs else math.inf

    def max_abs_coefficient(self) -> int:
        return max((abs(c) for c in self.terms.values()), default=0)

    def l1_norm(self) -> int:
        return sum(abs(c) for c in self.terms.values())

    def z_degree(self) -> int:
        return max((d for _, d in self.terms), default=0)


def ring_add(a: GroupRingPoly, b: GroupRingPoly) -> GroupRingPoly:
    return a + b


def ring_mul(a: GroupRingPoly, b: GroupRingPoly) -> GroupRingPoly:
    return a * b


class SkewRingMatrix:
    """Skew-symmetric ``n x n`` matrix over the group ring, indexed ``1..n``."""

    __slots__ = ("n", "t", "_upper")

    def __init__(self, n: int, t: int, upper: Mapping[tuple[int, int], GroupRingPoly] | None = None):
        self.n = n
        self.t = t
        self._upper: dict[tuple[int, int], GroupRingPoly] = {}
        for (i, j), val in (upper or {}).items():
            if not (1 <= i <= n and 1 <= j <= n) or i == j:
                raise ValueError(f"bad entry position {(i, j)}")
            if val.t != t:
                raise ValueError("entry ring mismatch")
            if i > j:
                i, j, val = j, i, -val
            if val:
                self._upper[(i, j)] = self._upper.get((i, j), GroupRingPoly.zero(t)) + val

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[GroupRingPoly | int]], t: int = 0) -> SkewRingMatrix:
        """Build from a full matrix, checking skew-symmetry and a zero diagonal."""
        n = len(rows)

        def lift(x):
            return x if isinstance(x, GroupRingPoly) else GroupRingPoly.scalar(t, x)

        upper = {}
        for i in range(n):
            if len(rows[i]) != n:
                raise ValueError("matrix must be square")
            if lift(rows[i][i]):
                raise ValueError("diagonal must be zero")
            for j in range(i + 1, n):
                a, b = lift(rows[i][j]), lift(rows[j][i])
                if a != -b:
                    raise ValueError(f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) are not negatives")
                upper[(i + 1, j + 1)] = a
        return cls(n, t, upper)

    def __getitem__(self, ij: tuple[int, int]) -> GroupRingPoly:
        i, j = ij
        if i == j:
            return GroupRingPoly.zero(self.t)
        if i < j:
            return self._upper.get((i, j), GroupRingPoly.zero(self.t))
        return -self._upper.get((j, i), GroupRingPoly.zero(self.t))

    def nonzero_upper(self) -> dict[tuple[int, int], GroupRingPoly]:
        return dict(self._upper)

    def to_rows(self) -> list[list[GroupRingPoly]]:
        return [[self[i, j] for j in range(1, self.n + 1)] for i in range(1, self.n + 1)]
