"""Terms of the free virtual biquandle, symbolic braid actions and presentations.

Terms are hash-consed: building the same term twice returns the same object,
so the exponentially large trees produced by symbolic braid actions are stored
as DAGs with one node per distinct subterm.  Printed syntax::

    x1    f^k(t)    R1(t,u)    R2(t,u)    R1b(t,u)    R2b(t,u)
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import VirtualBiquandle
from .braid import BraidWord, Kind
from .coloring import DEFAULT_BUDGET, ColoringResult, RepKind, decode_tuple
from .errors import BudgetExceeded

OPS = ("R1", "R2", "R1b", "R2b")

GEN, APP, FPOW = "gen", "app", "fpow"


class Term:
    """Immutable, interned term node.  Build with :func:`gen`, :func:`app`, :func:`fpow`."""

    __slots__ = ("kind", "op", "index", "power", "left", "right", "uid")

    def __init__(self, kind, op=None, index=0, power=0, left=None, right=None, uid=0):
        self.kind = kind
        self.op = op
        self.index = index
        self.power = power
        self.left = left    # APP left operand, FPOW inner term
        self.right = right
        self.uid = uid

    def __hash__(self):
        return self.uid

    def __eq__(self, other):
        return self is other

    def __repr__(self):
        return f"Term({self})"

    def __str__(self):
        return to_string(self)


_table: dict[tuple, Term] = {}
_lock = threading.Lock()


def _intern(key, **fields) -> Term:
    with _lock:
        t = _table.get(key)
        if t is None:
            t = Term(uid=len(_table) + 1, **fields)
            _table[key] = t
        return t


def gen(i: int) -> Term:
    return _intern((GEN, i), kind=GEN, index=i)


def app(op: str, left: Term, right: Term) -> Term:
    if op not in OPS:
        raise ValueError(f"unknown operator {op}")
    return _intern((APP, op, left.uid, right.uid), kind=APP, op=op, left=left, right=right)


def fpow(k: int, t: Term) -> Term:
    """f^k(t), collapsing nested powers and dropping f^0."""
    if t.kind == FPOW:
        k += t.power
        t = t.left
    if k == 0:
        return t
    return _intern((FPOW, k, t.uid), kind=FPOW, power=k, left=t)


def to_string(t: Term) -> str:
    memo: dict[int, str] = {}

    def go(u: Term) -> str:
        s = memo.get(u.uid)
        if s is None:
            if u.kind == GEN:
                s = f"x{u.index}"
            elif u.kind == FPOW:
                s = f"f^{u.power}({go(u.left)})"
            else:
                s = f"{u.op}({go(u.left)},{go(u.right)})"
            memo[u.uid] = s
        return s

    return go(t)


def postorder(roots: Sequence[Term]) -> list[Term]:
    """Distinct subterms of ``roots``, children before parents (iterative)."""
    order, seen = [], set()
    stack = [(r, False) for r in reversed(roots)]
    while stack:
        t, expanded = stack.pop()
        if t.uid in seen:
            continue
        if expanded or t.kind == GEN:
            seen.add(t.uid)
            order.append(t)
            continue
        stack.append((t, True))
        if t.kind == APP:
            stack.append((t.right, False))
        stack.append((t.left, False))
    return order


def dag_size(roots: Sequence[Term]) -> int:
    return len(postorder(roots))


# ---------------------------------------------------------------------------
# symbolic actions and presentations

def _sym_generator(rep: RepKind, kind: Kind, a: Term, b: Term) -> tuple[Term, Term]:
    if rep is RepKind.PHI:
        if kind is Kind.SIGMA:
            return app("R1", a, b), app("R2", a, b)
        if kind is Kind.SIGMA_INV:
            return app("R1b", a, b), app("R2b", a, b)
        return fpow(-1, b), fpow(1, a)
    if kind is Kind.SIGMA:
        return app("R1", a, fpow(1, b)), app("R2", fpow(-1, a), b)
    if kind is Kind.SIGMA_INV:
        return app("R1b", a, fpow(1, b)), app("R2b", fpow(-1, a), b)
    return b, a


def symbolic_action(b: BraidWord, rep: RepKind | str) -> list[Term]:
    """Images of the free generators x1..xn under the action of ``b``."""
    rep = RepKind(rep)
    terms = [gen(i) for i in range(1, b.strands + 1)]
    for g in b.letters:
        i = g.index - 1
        terms[i], terms[i + 1] = _sym_generator(rep, g.kind, terms[i], terms[i + 1])
    return terms


@dataclass(frozen=True)
class Presentation:
    generator_count: int
    relations: tuple[tuple[Term, Term], ...]

    def __str__(self) -> str:
        return "".join(f"{lhs} = {rhs}\n" for lhs, rhs in self.relations)


def make_presentation(b: BraidWord, rep: RepKind | str) -> Presentation:
    """Relations  beta(x_i) = x_i  for every strand i."""
    terms = symbolic_action(b, rep)
    return Presentation(b.strands, tuple((t, gen(i + 1)) for i, t in enumerate(terms)))


def substitute(t: Term, images: dict[int, Term], memo: dict[int, Term] | None = None) -> Term:
    """Replace generator ``x_i`` by ``images[i]`` (missing indices stay put)."""
    memo = {} if memo is None else memo
    for u in postorder([t]):
        if u.kind == GEN:
            memo[u.uid] = images.get(u.index, u)
        elif u.kind == FPOW:
            memo[u.uid] = fpow(u.power, memo[u.left.uid])
        else:
            memo[u.uid] = app(u.op, memo[u.left.uid], memo[u.right.uid])
    return memo[t.uid]


def theta_substitute(p: Presentation) -> Presentation:
    """Apply x_i -> f^(n-i)(x_i) to both sides of every relation."""
    n = p.generator_count
    images = {i: fpow(n - i, gen(i)) for i in range(1, n + 1)}
    memo: dict[int, Term] = {}
    return Presentation(n, tuple(
        (substitute(lhs, images, memo), substitute(rhs, images, memo)) for lhs, rhs in p.relations
    ))


def push_f_inward(t: Term) -> Term:
    """Move every power of f down onto generators using f(R*(a,b)) = R*(f a, f b)."""
    memo: dict[tuple[int, int], Term] = {}

    def go(u: Term, k: int) -> Term:
        key = (u.uid, k)
        r = memo.get(key)
        if r is None:
            if u.kind == GEN:
                r = fpow(k, u)
            elif u.kind == FPOW:
                r = go(u.left, k + u.power)
            else:
                r = app(u.op, go(u.left, k), go(u.right, k))
            memo[key] = r
        return r

    return go(t, 0)


# ---------------------------------------------------------------------------
# evaluation in a finite virtual biquandle

def _power_table(vbq: VirtualBiquandle, k: int) -> np.ndarray:
    step = np.array(vbq.f if k >= 0 else vbq.f_inv, dtype=np.int64)
    out = np.arange(vbq.n, dtype=np.int64)
    for _ in range(abs(k)):
        out = step[out]
    return out


def _evaluate(roots: Sequence[Term], columns: dict[int, np.ndarray], vbq: VirtualBiquandle) -> dict[int, np.ndarray]:
    """Vectorised evaluation of every node under a batch of assignments."""
    m = vbq.n
    r1, r2, r1b, r2b = (np.array(t, dtype=np.int64) for t in (
        vbq.bq.r1, vbq.bq.r2, vbq.bq.r1bar, vbq.bq.r2bar))
    tables = {"R1": r1, "R2": r2, "R1b": r1b, "R2b": r2b}
    powers: dict[int, np.ndarray] = {}
    val: dict[int, np.ndarray] = {}
    for u in postorder(roots):
        if u.kind == GEN:
            val[u.uid] = columns[u.index]
        elif u.kind == FPOW:
            if u.power not in powers:
                powers[u.power] = _power_table(vbq, u.power)
            val[u.uid] = powers[u.power][val[u.left.uid]]
        else:
            val[u.uid] = tables[u.op][val[u.left.uid] * m + val[u.right.uid]]
    return val


def eval_term(t: Term, assignment: Sequence[int] | dict[int, int], vbq: VirtualBiquandle) -> int:
    """Value of ``t`` when generator ``x_i`` takes ``assignment[i]``.

    A sequence is read 1-based: ``assignment[0]`` is the value of ``x1``.
    """
    if not isinstance(assignment, dict):
        assignment = {i + 1: v for i, v in enumerate(assignment)}
    cols = {i: np.array([v], dtype=np.int64) for i, v in assignment.items()}
    return int(_evaluate([t], cols, vbq)[t.uid][0])


def count_homs(p: Presentation, vbq: VirtualBiquandle, materialize: bool = False,
               budget: int = DEFAULT_BUDGET) -> ColoringResult:
    """Number of generator assignments satisfying every relation."""
    m, n = vbq.n, p.generator_count
    if m ** n > budget:
        raise BudgetExceeded(m ** n, budget)
    idx = np.arange(m ** n, dtype=np.int64)
    cols = {i: (idx // m ** (n - i)) % m for i in range(1, n + 1)}
    roots = [t for rel in p.relations for t in rel]
    val = _evaluate(roots, cols, vbq)
    ok = np.ones(idx.shape, dtype=bool)
    for lhs, rhs in p.relations:
        ok &= val[lhs.uid] == val[rhs.uid]
    witnesses = None
    if materialize:
        witnesses = [decode_tuple(int(k), m, n) for k in np.flatnonzero(ok)]
    return ColoringResult(int(ok.sum()), witnesses)
