"""Text formats for instances.

Blank lines and ``#`` comments are ignored everywhere.  Bit strings list
coordinate 1 first, so ``p=10`` is the vector ``(1, 0)``.

gf2matrix::

    gf2matrix <rows> <cols>
    0110...            (one line of exactly <cols> 0/1 characters per row)

graph block (used inside the other formats)::

    graph <n> <m>
    e <id> <u> <v> [p=<t bits>] [w=<int>] [s=<0|1>]      (m lines)

evencut-set::

    evencut-set
    <graph block>
    T <i> <v1> <v2> ...      (one line per set, i = 1..t in order)

evencut-dim::

    evencut-dim t=<t>
    <graph block, s=1 marks edges of Sigma>
    tau <v> <t bits>         (vertices not listed have tau 0)
    alpha <t bits>

matching::

    matching t=<t>
    <graph block, p= and w= on every edge>
    alpha <t bits>

parity (walks, cycles and joins)::

    parity t=<t>
    <graph block, p= on every edge>
    T <v1> <v2> ...          (optional; terminal set)
    alpha <t bits>

graft (B is |V| x t, C is s x |E|, D is s x t)::

    graft s=<s> t=<t>
    <graph block>
    <gf2matrix block B>
    <gf2matrix block C>
    <gf2matrix block D>

skewmatrix (entries above the diagonal; terms are coef:beta bits:z-degree)::

    skewmatrix <n> t=<t>
    entry <i> <j> <coef>:<bits>:<deg> ...
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .evencut import EvenCutInstance, SetEvenCutInstance
from .gf2 import Gf2Matrix, bits_to_int, int_to_bits
from .graft import SignedGraft
from .graph import Edge, MultiGraph
from .pfaffian.matching import MatchingInstance
from .pfaffian.ring import GroupRingPoly, SkewRingMatrix


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class ParityInstance:
    graph: MultiGraph
    t: int
    gamma: dict[int, int]
    terminals: tuple[int, ...] | None
    alpha: int


@dataclass
class _Lines:
    items: list[tuple[int, list[str]]]
    pos: int = 0
    last: int = field(default=0)

    @classmethod
    def of(cls, text: str) -> _Lines:
        items = []
        for k, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if line:
                items.append((k, line.split()))
        return cls(items, 0, len(text.splitlines()))

    def peek(self) -> tuple[int, list[str]] | None:
        return self.items[self.pos] if self.pos < len(self.items) else None

    def next(self, what: str) -> tuple[int, list[str]]:
        item = self.peek()
        if item is None:
            raise ParseError(f"unexpected end of input, expected {what}", self.last + 1)
        self.pos += 1
        return item

    def done(self) -> None:
        item = self.peek()
        if item is not None:
            raise ParseError(f"unexpected content {' '.join(item[1])!r}", item[0])


def _int(tok: str, line: int, what: str, lo: int | None = 0) -> int:
    try:
        val = int(tok)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {tok!r}", line) from None
    if lo is not None and val < lo:
        raise ParseError(f"{what} must be >= {lo}, got {val}", line)
    return val


def _bits(tok: str, length: int, line: int, what: str) -> int:
    if len(tok) != length or any(ch not in "01" for ch in tok):
        raise ParseError(f"{what} must be {length} characters from 0/1, got {tok!r}", line)
    return bits_to_int(tok) if length else 0


def _keyword(tokens: list[str], line: int, expect: str) -> None:
    if not tokens or tokens[0] != expect:
        raise ParseError(f"expected {expect!r}, got {tokens[0] if tokens else ''!r}", line)


def _header_t(tokens: list[str], line: int, name: str, extra: int = 0) -> list[str]:
    _keyword(tokens, line, name)
    if len(tokens) != 2 + extra or not tokens[-1].startswith("t="):
        raise ParseError(f"header must be '{name}{' <n>' if extra else ''} t=<t>'", line)
    return tokens


# gf2matrix ---------------------------------------------------------------


def _parse_matrix(lines: _Lines) -> Gf2Matrix:
    line, toks = lines.next("gf2matrix header")
    _keyword(toks, line, "gf2matrix")
    if len(toks) != 3:
        raise ParseError("header must be 'gf2matrix <rows> <cols>'", line)
    r, c = _int(toks[1], line, "rows"), _int(toks[2], line, "cols")
    rows = []
    if c == 0:
        return Gf2Matrix.zeros(r, 0)
    for i in range(r):
        ln, rt = lines.next(f"row {i + 1}")
        if len(rt) != 1 or len(rt[0]) != c:
            raise ParseError(f"row {i + 1}: wrong length, expected {c} characters", ln)
        if any(ch not in "01" for ch in rt[0]):
            raise ParseError(f"row {i + 1}: only 0 and 1 are allowed", ln)
        rows.append([int(ch) for ch in rt[0]])
    return Gf2Matrix.from_lists(rows, ncols=c)


def parse_gf2matrix(text: str) -> Gf2Matrix:
    lines = _Lines.of(text)
    m = _parse_matrix(lines)
    lines.done()
    return m


def format_gf2matrix(m: Gf2Matrix) -> str:
    out = [f"gf2matrix {m.nrows} {m.ncols}"]
    if m.ncols:
        out += ["".join(str(x) for x in row) for row in m.to_lists()]
    return "\n".join(out) + "\n"


# graph block --------------------------------------------------------------


@dataclass
class _GraphBlock:
    graph: MultiGraph
    p: dict[int, int]
    w: dict[int, int]
    s: dict[int, int]


def _parse_graph(lines: _Lines, t: int, need_p: bool = False, need_w: bool = False) -> _GraphBlock:
    line, toks = lines.next("graph header")
    _keyword(toks, line, "graph")
    if len(toks) != 3:
        raise ParseError("header must be 'graph <n> <m>'", line)
    n, m = _int(toks[1], line, "n"), _int(toks[2], line, "m")
    edges, p, w, s = [], {}, {}, {}
    for k in range(m):
        ln, et = lines.next(f"edge {k + 1} of {m}")
        _keyword(et, ln, "e")
        if len(et) < 4:
            raise ParseError("edge line must be 'e <id> <u> <v> [attrs]'", ln)
        eid = _int(et[1], ln, "edge id")
        u, v = _int(et[2], ln, "u", 1), _int(et[3], ln, "v", 1)
        if u > n or v > n:
            raise ParseError(f"edge {eid} has an endpoint outside 1..{n}", ln)
        if any(e.id == eid for e in edges):
            raise ParseError(f"duplicate edge id {eid}", ln)
        attrs = {}
        for tok in et[4:]:
            key, eq, val = tok.partition("=")
            if not eq or key not in ("p", "w", "s") or key in attrs:
                raise ParseError(f"bad edge attribute {tok!r}", ln)
            attrs[key] = val
        if "p" in attrs:
            p[eid] = _bits(attrs["p"], t, ln, "p")
        elif need_p and t > 0:
            raise ParseError(f"edge {eid} needs a p= attribute", ln)
        else:
            p[eid] = 0
        if "w" in attrs:
            w[eid] = _int(attrs["w"], ln, "w")
        elif need_w:
            raise ParseError(f"edge {eid} needs a w= attribute", ln)
        else:
            w[eid] = 0
        s[eid] = _bits(attrs["s"], 1, ln, "s") if "s" in attrs else 0
        edges.append(Edge(eid, u, v))
    return _GraphBlock(MultiGraph(n, tuple(edges)), p, w, s)


def _format_graph(g: MultiGraph, t: int = 0, p=None, w=None, s=None) -> list[str]:
    out = [f"graph {g.n} {g.m}"]
    for e in g.edges:
        parts = [f"e {e.id} {e.u} {e.v}"]
        if p is not None:
            parts.append(f"p={int_to_bits(p[e.id], t)}")
        if w is not None:
            parts.append(f"w={w[e.id]}")
        if s is not None and s.get(e.id):
            parts.append("s=1")
        out.append(" ".join(parts))
    return out


def parse_graph(text: str) -> MultiGraph:
    lines = _Lines.of(text)
    g = _parse_graph(lines, 0).graph
    lines.done()
    return g


def format_graph(g: MultiGraph) -> str:
    return "\n".join(_format_graph(g)) + "\n"


def _parse_t(tok: str, line: int) -> int:
    return _int(tok[2:], line, "t")


def _parse_alpha(lines: _Lines, t: int) -> int:
    line, toks = lines.next("alpha line")
    _keyword(toks, line, "alpha")
    if len(toks) != 2 and not (t == 0 and len(toks) == 1):
        raise ParseError("alpha line must be 'alpha <t bits>'", line)
    return _bits(toks[1] if len(toks) > 1 else "", t, line, "alpha")


# evencut ------------------------------------------------------------------


def parse_evencut_set(text: str) -> SetEvenCutInstance:
    lines = _Lines.of(text)
    line, toks = lines.next("header")
    _keyword(toks, line, "evencut-set")
    if len(toks) != 1:
        raise ParseError("header must be 'evencut-set'", line)
    g = _parse_graph(lines, 0).graph
    sets = []
    while lines.peek() is not None:
        ln, tt = lines.next("T line")
        _keyword(tt, ln, "T")
        if len(tt) < 2:
            raise ParseError("T line must be 'T <i> <vertices>'", ln)
        i = _int(tt[1], ln, "set index", 1)
        if i != len(sets) + 1:
            raise ParseError(f"expected T {len(sets) + 1}, got T {i}", ln)
        vs = [_int(x, ln, "vertex", 1) for x in tt[2:]]
        if any(v > g.n for v in vs) or len(set(vs)) != len(vs):
            raise ParseError(f"T_{i} must list distinct vertices of 1..{g.n}", ln)
        if len(vs) % 2:
            raise ParseError(f"T_{i} has odd cardinality", ln)
        sets.append(frozenset(vs))
    return SetEvenCutInstance(g, tuple(sets))


def format_evencut_set(inst: SetEvenCutInstance) -> str:
    out = ["evencut-set"] + _format_graph(inst.graph)
    for i, ts in enumerate(inst.terminals, start=1):
        out.append(" ".join([f"T {i}"] + [str(v) for v in sorted(ts)]))
    return "\n".join(out) + "\n"


def parse_evencut_dim(text: str) -> EvenCutInstance:
    lines = _Lines.of(text)
    line, toks = lines.next("header")
    _header_t(toks, line, "evencut-dim")
    t = _parse_t(toks[1], line)
    block = _parse_graph(lines, t)
    g = block.graph
    tau = [0] * g.n
    seen = set()
    while True:
        item = lines.peek()
        if item is None or item[1][0] != "tau":
            break
        ln, tt = lines.next("tau line")
        if len(tt) != 3 and not (t == 0 and len(tt) == 2):
            raise ParseError("tau line must be 'tau <v> <t bits>'", ln)
        v = _int(tt[1], ln, "vertex", 1)
        if v > g.n or v in seen:
            raise ParseError(f"tau given for bad or repeated vertex {v}", ln)
        seen.add(v)
        tau[v - 1] = _bits(tt[2] if len(tt) > 2 else "", t, ln, "tau")
    alpha = _parse_alpha(lines, t)
    lines.done()
    sigma = frozenset(eid for eid, flag in block.s.items() if flag)
    return EvenCutInstance(g, t, tuple(tau), sigma, alpha)


def format_evencut_dim(inst: EvenCutInstance) -> str:
    out = [f"evencut-dim t={inst.t}"]
    out += _format_graph(inst.graph, s={e: 1 for e in inst.sigma})
    for v in inst.graph.vertices:
        if inst.tau[v - 1]:
            out.append(f"tau {v} {int_to_bits(inst.tau[v - 1], inst.t)}")
    out.append(f"alpha {int_to_bits(inst.alpha, inst.t)}".rstrip())
    return "\n".join(out) + "\n"


# matching / parity ---------------------------------------------------------


def parse_matching(text: str) -> MatchingInstance:
    lines = _Lines.of(text)
    line, toks = lines.next("header")
    _header_t(toks, line, "matching")
    t = _parse_t(toks[1], line)
    block = _parse_graph(lines, t, need_p=True, need_w=True)
    alpha = _parse_alpha(lines, t)
    lines.done()
    return MatchingInstance(block.graph, block.w, block.p, t, alpha)


def format_matching(inst: MatchingInstance) -> str:
    out = [f"matching t={inst.t}"]
    out += _format_graph(inst.graph, inst.t, p=inst.parities, w=inst.weights)
    out.append(f"alpha {int_to_bits(inst.alpha, inst.t)}".rstrip())
    return "\n".join(out) + "\n"


def parse_parity(text: str) -> ParityInstance:
    lines = _Lines.of(text)
    line, toks = lines.next("header")
    _header_t(toks, line, "parity")
    t = _parse_t(toks[1], line)
    block = _parse_graph(lines, t, need_p=True)
    g = block.graph
    terminals = None
    item = lines.peek()
    if item is not None and item[1][0] == "T":
        ln, tt = lines.next("T line")
        vs = [_int(x, ln, "vertex", 1) for x in tt[1:]]
        if any(v > g.n for v in vs) or len(set(vs)) != len(vs):
            raise ParseError(f"T must list distinct vertices of 1..{g.n}", ln)
        terminals = tuple(sorted(vs))
    alpha = _parse_alpha(lines, t)
    lines.done()
    return ParityInstance(g, t, block.p, terminals, alpha)


def format_parity(inst: ParityInstance) -> str:
    out = [f"parity t={inst.t}"] + _format_graph(inst.graph, inst.t, p=inst.gamma)
    if inst.terminals is not None:
        out.append(" ".join(["T"] + [str(v) for v in inst.terminals]))
    out.append(f"alpha {int_to_bits(inst.alpha, inst.t)}".rstrip())
    return "\n".join(out) + "\n"


# grafts ------------------------------------------------------------------


def parse_graft(text: str) -> SignedGraft:
    lines = _Lines.of(text)
    line, toks = lines.next("header")
    _keyword(toks, line, "graft")
    if len(toks) != 3 or not toks[1].startswith("s=") or not toks[2].startswith("t="):
        raise ParseError("header must be 'graft s=<s> t=<t>'", line)
    s = _int(toks[1][2:], line, "s")
    t = _int(toks[2][2:], line, "t")
    g = _parse_graph(lines, 0).graph
    blocks = {}
    for name, shape in (("B", (g.n, t)), ("C", (s, g.m)), ("D", (s, t))):
        first = lines.peek()
        where = first[0] if first else lines.last + 1
        mat = _parse_matrix(lines)
        if mat.shape != shape:
            raise ParseError(f"{name} must be {shape[0]}x{shape[1]}, got {mat.nrows}x{mat.ncols}", where)
        blocks[name] = mat
    lines.done()
    return SignedGraft(g, blocks["B"], blocks["C"], blocks["D"])


def format_graft(sg: SignedGraft) -> str:
    out = "\n".join([f"graft s={sg.s} t={sg.t}"] + _format_graph(sg.graph)) + "\n"
    for m in (sg.B, sg.C, sg.D):
        out += format_gf2matrix(Gf2Matrix(m.nrows, m.ncols, m.rows))
    return out


# skew matrices ------------------------------------------------------------


def _parse_term(tok: str, t: int, line: int) -> tuple[tuple[int, int], int]:
    parts = tok.split(":")
    if len(parts) != 3:
        raise ParseError(f"term must be coef:bits:degree, got {tok!r}", line)
    coef = _int(parts[0], line, "coefficient", None)
    beta = _bits(parts[1], t, line, "y-exponent")
    deg = _int(parts[2], line, "z-degree")
    return (beta, deg), coef


def parse_skewmatrix(text: str) -> SkewRingMatrix:
    lines = _Lines.of(text)
    line, toks = lines.next("header")
    _header_t(toks, line, "skewmatrix", extra=1)
    n = _int(toks[1], line, "n")
    t = _parse_t(toks[2], line)
    upper = {}
    while lines.peek() is not None:
        ln, et = lines.next("entry line")
        _keyword(et, ln, "entry")
        if len(et) < 3:
            raise ParseError("entry line must be 'entry <i> <j> <terms>'", ln)
        i, j = _int(et[1], ln, "i", 1), _int(et[2], ln, "j", 1)
        if not i < j <= n:
            raise ParseError(f"entry ({i},{j}) must satisfy i < j <= {n}", ln)
        if (i, j) in upper:
            raise ParseError(f"entry ({i},{j}) given twice", ln)
        terms: dict[tuple[int, int], int] = {}
        for tok in et[3:]:
            key, coef = _parse_term(tok, t, ln)
            terms[key] = terms.get(key, 0) + coef
        upper[(i, j)] = GroupRingPoly(t, terms)
    return SkewRingMatrix(n, t, upper)


def format_poly_terms(p: GroupRingPoly) -> str:
    return " ".join(f"{c}:{int_to_bits(b, p.t)}:{d}" for (b, d), c in sorted(p.terms.items()))


def format_skewmatrix(d: SkewRingMatrix) -> str:
    out = [f"skewmatrix {d.n} t={d.t}"]
    for (i, j), v in sorted(d.nonzero_upper().items()):
        out.append(f"entry {i} {j} {format_poly_terms(v)}")
    return "\n".join(out) + "\n"


PARSERS = {
    "gf2matrix": parse_gf2matrix,
    "graph": parse_graph,
    "evencut-set": parse_evencut_set,
    "evencut-dim": parse_evencut_dim,
    "matching": parse_matching,
    "parity": parse_parity,
    "graft": parse_graft,
    "skewmatrix": parse_skewmatrix,
}


def parse_text(text: str, kind: str):
    try:
        parser = PARSERS[kind]
    except KeyError:
        raise ValueError(f"unknown instance kind {kind!r}") from None
    return parser(text)


def parse_instance(path: str | Path, kind: str):
    """Read and validate an instance file of the given kind."""
    return parse_text(Path(path).read_text(), kind)


def iter_kinds() -> Iterator[str]:
    return iter(PARSERS)
