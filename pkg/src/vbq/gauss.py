"""Colorings of virtual links given by Gauss codes, using only classical crossings.

Each crossing has a left and a right incoming semiarc ``x``, ``y`` and
outgoing semiarcs ``z`` (left) and ``w`` (right), and imposes

    z = R1(x, f(y)),      w = R2(f^-1(x), y)        (positive)
    z = R1b(x, f(y)),     w = R2b(f^-1(x), y)       (negative)

At a positive crossing the left strand is the under strand; at a negative one
it is the over strand.  This is the same convention ``braid_to_gauss`` uses
for ``s<i>`` and ``S<i>``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable

from .algebra import VirtualBiquandle
from .braid import GaussCode, Token
from .coloring import DEFAULT_BUDGET, ColoringResult
from .errors import BudgetExceeded, ParseError, StructureError
from .terms import Presentation, app, fpow, gen

_TOKEN = re.compile(r"([OU])(\d+)([+-])")


def parse_gauss(text: str) -> GaussCode:
    """Parse ``U1+O2+|O1+U2+`` style codes; ``|`` separates components."""
    text = "".join(text.split())
    if not text:
        raise ParseError("empty Gauss code")
    comps = []
    for part in text.split("|"):
        tokens = []
        pos = 0
        while pos < len(part):
            m = _TOKEN.match(part, pos)
            if m is None:
                raise ParseError(f"bad Gauss token at {part[pos:]!r}")
            tokens.append(Token(m.group(1) == "O", int(m.group(2)), 1 if m.group(3) == "+" else -1))
            pos = m.end()
        comps.append(tuple(tokens))
    try:
        return GaussCode(tuple(comps))
    except StructureError as exc:
        raise ParseError(str(exc)) from None


@dataclass(frozen=True)
class CrossingRecord:
    crossing: int
    sign: int
    over_in: int
    over_out: int
    under_in: int
    under_out: int

    @property
    def left_in(self) -> int:
        return self.under_in if self.sign > 0 else self.over_in

    @property
    def right_in(self) -> int:
        return self.over_in if self.sign > 0 else self.under_in

    @property
    def left_out(self) -> int:
        return self.over_out if self.sign > 0 else self.under_out

    @property
    def right_out(self) -> int:
        return self.under_out if self.sign > 0 else self.over_out


@dataclass(frozen=True)
class SemiarcGraph:
    count: int
    component: tuple[int, ...]          # component index of each semiarc
    crossings: tuple[CrossingRecord, ...]  # sorted by crossing id


def build_semiarc_graph(g: GaussCode) -> SemiarcGraph:
    """Semiarc ``offset + j`` of a component runs from its token ``j`` to token ``j+1``;
    a token-free component is a single circular semiarc."""
    component = []
    ends: dict[int, dict[str, int]] = {}
    signs: dict[int, int] = {}
    offset = 0
    for ci, comp in enumerate(g.components):
        k = len(comp)
        if k == 0:
            component.append(ci)
            offset += 1
            continue
        for j, tok in enumerate(comp):
            kind = "over" if tok.over else "under"
            rec = ends.setdefault(tok.crossing, {})
            rec[kind + "_in"] = offset + (j - 1) % k
            rec[kind + "_out"] = offset + j
            signs[tok.crossing] = tok.sign
            component.append(ci)
        offset += k
    crossings = tuple(
        CrossingRecord(cid, signs[cid], **ends[cid]) for cid in sorted(ends)
    )
    return SemiarcGraph(offset, tuple(component), crossings)


@dataclass(frozen=True)
class CrossingEquation:
    """``target = value(left, right)`` on semiarc variables."""

    target: int
    left: int
    right: int
    op: str
    value: Callable[[int, int], int]

    def holds(self, labels) -> bool:
        return labels[self.target] == self.value(labels[self.left], labels[self.right])


def crossing_constraints(vbq: VirtualBiquandle, rec: CrossingRecord) -> tuple[CrossingEquation, CrossingEquation]:
    bq, f, fi, n = vbq.bq, vbq.f, vbq.f_inv, vbq.n
    t1, t2 = (bq.r1, bq.r2) if rec.sign > 0 else (bq.r1bar, bq.r2bar)
    suffix = "" if rec.sign > 0 else "b"
    x, y = rec.left_in, rec.right_in
    return (
        CrossingEquation(rec.left_out, x, y, "R1" + suffix, lambda a, b: t1[a * n + f[b]]),
        CrossingEquation(rec.right_out, x, y, "R2" + suffix, lambda a, b: t2[fi[a] * n + b]),
    )


class _Propagator:
    """Local consistency for one crossing sign: the m*m admissible label
    quadruples (x, y, z, w) filtered by whatever is already known."""

    def __init__(self, eqs_value, m):
        z_of, w_of = eqs_value
        self.quads = [(x, y, z_of(x, y), w_of(x, y)) for x in range(m) for y in range(m)]
        self.cache: dict[tuple, tuple | None] = {}

    def implied(self, known: tuple) -> tuple | None:
        """Known values (or -1) for (x, y, z, w) -> fully implied quadruple
        entries (-1 where undetermined), or None on conflict."""
        r = self.cache.get(known, False)
        if r is not False:
            return r
        compatible = [q for q in self.quads
                      if all(k < 0 or k == v for k, v in zip(known, q))]
        if not compatible:
            r = None
        else:
            r = tuple(
                compatible[0][j] if all(q[j] == compatible[0][j] for q in compatible) else -1
                for j in range(4)
            )
        self.cache[known] = r
        return r


def color_gauss(vbq: VirtualBiquandle, g: GaussCode, materialize: bool = False,
                budget: int = DEFAULT_BUDGET) -> ColoringResult:
    """Count semiarc labelings satisfying every crossing equation.

    Propagation to a fixed point after each decision; decisions on the
    lowest-index unlabeled semiarc.  ``budget`` bounds the number of search
    nodes.  Complete labelings are re-checked against every equation.
    """
    m = vbq.n
    graph = build_semiarc_graph(g)
    eqs = [crossing_constraints(vbq, rec) for rec in graph.crossings]
    props = {}
    for rec, (ez, ew) in zip(graph.crossings, eqs):
        if rec.sign not in props:
            props[rec.sign] = _Propagator((ez.value, ew.value), m)
    cells = [(rec.left_in, rec.right_in, rec.left_out, rec.right_out) for rec in graph.crossings]
    touching: list[list[int]] = [[] for _ in range(graph.count)]
    for ci, cell in enumerate(cells):
        for v in set(cell):
            touching[v].append(ci)
    signs = [rec.sign for rec in graph.crossings]

    labels = [-1] * graph.count
    count = 0
    nodes = 0
    witnesses = [] if materialize else None

    def propagate(queue: list[int], trail: list[int]) -> bool:
        while queue:
            ci = queue.pop()
            cell = cells[ci]
            known = tuple(labels[v] for v in cell)
            implied = props[signs[ci]].implied(known)
            if implied is None:
                return False
            for v, val in zip(cell, implied):
                if val < 0:
                    continue
                if labels[v] < 0:
                    labels[v] = val
                    trail.append(v)
                    queue.extend(touching[v])
                elif labels[v] != val:
                    return False
        return True

    def search(start: int):
        nonlocal count, nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(nodes, budget, "search nodes")
        var = next((v for v in range(start, graph.count) if labels[v] < 0), None)
        if var is None:
            if all(e.holds(labels) for pair in eqs for e in pair):
                count += 1
                if materialize:
                    witnesses.append(tuple(labels))
            return
        for val in range(m):
            trail = [var]
            labels[var] = val
            if propagate(list(touching[var]), trail):
                search(var + 1)
            for v in trail:
                labels[v] = -1

    root_trail: list[int] = []
    if propagate(list(range(len(cells))), root_trail):
        search(0)
    return ColoringResult(count, witnesses)


def gauss_presentation(g: GaussCode) -> Presentation:
    """One generator per semiarc (``x1`` is semiarc 0) and two relations per
    crossing, in crossing-id order."""
    graph = build_semiarc_graph(g)
    rels = []
    for rec in graph.crossings:
        b = "" if rec.sign > 0 else "b"
        x, y = gen(rec.left_in + 1), gen(rec.right_in + 1)
        rels.append((app("R1" + b, x, fpow(1, y)), gen(rec.left_out + 1)))
        rels.append((app("R2" + b, fpow(-1, x), y), gen(rec.right_out + 1)))
    return Presentation(graph.count, tuple(rels))
