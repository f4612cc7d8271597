"""Actions of the virtual braid group on X^n and coloring counts of braid closures.

Two actions of a virtual biquandle ``(X, f, R)`` are implemented from their
generator formulas:

* ``PHI``: sigma_i -> (R1(a, b), R2(a, b)), rho_i -> (f^-1(b), f(a));
* ``PSI``: sigma_i -> (R1(a, f(b)), R2(f^-1(a), b)), rho_i -> (b, a);

with the inverse letters using the inverse operator in the same slots.  Colorings
of the closure of a braid are the tuples fixed by its action.  ``theta``
multiplies coordinate ``i`` (1-based) by ``f^(n-i)`` and conjugates one
action into the other; that identity is checked, never assumed.
"""
from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .algebra import VirtualBiquandle
from .braid import BraidWord, Generator, Kind, Rho, Sigma
from .errors import BudgetExceeded

DEFAULT_BUDGET = 10**8


class RepKind(enum.Enum):
    PHI = "phi"
    PSI = "psi"


@dataclass
class ColoringResult:
    count: int
    witnesses: list[tuple[int, ...]] | None = None


def act_generator(vbq: VirtualBiquandle, g: Generator, rep: RepKind, t: Sequence[int]) -> tuple[int, ...]:
    out = list(t)
    i = g.index - 1
    a, b = out[i], out[i + 1]
    op, f, fi = vbq.op, vbq.f, vbq.f_inv
    n = vbq.n
    bq = vbq.bq
    if rep is RepKind.PHI:
        if g.kind is Kind.SIGMA:
            new = op(a, b)
        elif g.kind is Kind.SIGMA_INV:
            new = bq.r1bar[a * n + b], bq.r2bar[a * n + b]
        else:
            new = fi[b], f[a]
    else:
        if g.kind is Kind.SIGMA:
            new = op(a, f[b])[0], op(fi[a], b)[1]
        elif g.kind is Kind.SIGMA_INV:
            new = bq.r1bar[a * n + f[b]], bq.r2bar[fi[a] * n + b]
        else:
            new = b, a
    out[i], out[i + 1] = new
    return tuple(out)


def act_braid(vbq: VirtualBiquandle, b: BraidWord, rep: RepKind, t: Sequence[int]) -> tuple[int, ...]:
    t = tuple(t)
    for g in b.letters:
        t = act_generator(vbq, g, rep, t)
    return t


def theta(vbq: VirtualBiquandle, t: Sequence[int]) -> tuple[int, ...]:
    n = len(t)
    return tuple(vbq.f_power(n - 1 - j, v) for j, v in enumerate(t))


def theta_inv(vbq: VirtualBiquandle, t: Sequence[int]) -> tuple[int, ...]:
    n = len(t)
    return tuple(vbq.f_power(-(n - 1 - j), v) for j, v in enumerate(t))


_OPCODES = {
    (RepKind.PHI, Kind.SIGMA): kernels.PHI_SIGMA,
    (RepKind.PHI, Kind.SIGMA_INV): kernels.PHI_SIGMA_INV,
    (RepKind.PHI, Kind.RHO): kernels.PHI_RHO,
    (RepKind.PSI, Kind.SIGMA): kernels.PSI_SIGMA,
    (RepKind.PSI, Kind.SIGMA_INV): kernels.PSI_SIGMA_INV,
    (RepKind.PSI, Kind.RHO): kernels.PSI_RHO,
}


def compile_program(b: BraidWord, rep: RepKind) -> np.ndarray:
    prog = np.array(
        [(_OPCODES[rep, g.kind], g.index - 1) for g in b.letters], dtype=np.int32
    )
    return prog.reshape(-1, 2)


def decode_tuple(index: int, m: int, strands: int) -> tuple[int, ...]:
    out = [0] * strands
    for j in range(strands - 1, -1, -1):
        index, out[j] = divmod(index, m)
    return tuple(out)


def _partitions(m: int, workers: int) -> list[tuple[int, int]]:
    workers = max(1, min(workers, m))
    bounds = [m * k // workers for k in range(workers + 1)]
    return [(bounds[k], bounds[k + 1]) for k in range(workers) if bounds[k] < bounds[k + 1]]


def count_colorings(vbq: VirtualBiquandle, b: BraidWord, rep: RepKind | str,
                    materialize: bool = False, budget: int = DEFAULT_BUDGET,
                    workers: int = 1, backend: str | None = None) -> ColoringResult:
    """Number of tuples in X^n fixed by the action of ``b`` (exhaustive scan).

    The scan is split by first coordinate across ``workers`` threads; the
    compiled kernel releases the GIL.  Raises BudgetExceeded when
    ``|X|^n > budget``.
    """
    rep = RepKind(rep)
    m, n = vbq.n, b.strands
    if m ** n > budget:
        raise BudgetExceeded(m ** n, budget)
    kern = kernels.get_backend(backend)
    prog = compile_program(b, rep)
    tabs = vbq.arrays

    def run(part):
        lo, hi = part
        return kern.fixed_points(*tabs, m, n, prog, lo, hi, materialize)

    parts = _partitions(m, workers)
    if len(parts) == 1:
        results = [run(parts[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(parts)) as pool:
            results = list(pool.map(run, parts))
    count = sum(c for c, _ in results)
    witnesses = None
    if materialize:
        witnesses = [decode_tuple(int(i), m, n) for _, w in results for i in w]
    return ColoringResult(count, witnesses)


@dataclass
class BridgeReport:
    phi_count: int
    psi_count: int
    mechanism_checked: int
    counterexamples: list[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]] = field(
        default_factory=list
    )  # (phi-fixed t, theta(t), psi(theta(t)))

    @property
    def ok(self) -> bool:
        return self.phi_count == self.psi_count and not self.counterexamples


def verify_bridge(vbq: VirtualBiquandle, b: BraidWord, budget: int = DEFAULT_BUDGET,
                  workers: int = 1) -> BridgeReport:
    """Compare both fixed-point counts and check that theta maps every
    phi-fixed tuple to a psi-fixed tuple."""
    phi = count_colorings(vbq, b, RepKind.PHI, materialize=True, budget=budget, workers=workers)
    psi = count_colorings(vbq, b, RepKind.PSI, budget=budget, workers=workers)
    report = BridgeReport(phi.count, psi.count, len(phi.witnesses))
    for t in phi.witnesses:
        s = theta(vbq, t)
        image = act_braid(vbq, b, RepKind.PSI, s)
        if image != s:
            report.counterexamples.append((t, s, image))
    return report


# ---------------------------------------------------------------------------
# defining relations of VB_n

def vb_relations(n: int) -> list[tuple[str, BraidWord, BraidWord]]:
    """Every defining relation of VB_n as (family, lhs, rhs); words read left to right."""
    rels = []
    w = lambda *gs: BraidWord(n, gs)  # noqa: E731
    ident = w()
    for i in range(1, n - 1):
        rels.append(("sigma braid", w(Sigma(i), Sigma(i + 1), Sigma(i)),
                     w(Sigma(i + 1), Sigma(i), Sigma(i + 1))))
        rels.append(("rho braid", w(Rho(i), Rho(i + 1), Rho(i)),
                     w(Rho(i + 1), Rho(i), Rho(i + 1))))
        rels.append(("mixed", w(Rho(i), Rho(i + 1), Sigma(i)),
                     w(Sigma(i + 1), Rho(i), Rho(i + 1))))
    for i in range(1, n):
        for j in range(1, n):
            if abs(i - j) >= 2:
                if i < j:
                    rels.append(("sigma commute", w(Sigma(i), Sigma(j)), w(Sigma(j), Sigma(i))))
                    rels.append(("rho commute", w(Rho(i), Rho(j)), w(Rho(j), Rho(i))))
                rels.append(("sigma-rho commute", w(Sigma(i), Rho(j)), w(Rho(j), Sigma(i))))
        rels.append(("rho involution", w(Rho(i), Rho(i)), ident))
    return rels


def act_all(vbq: VirtualBiquandle, b: BraidWord, rep: RepKind, cols: list[np.ndarray]) -> list[np.ndarray]:
    """Vectorised action on a batch of tuples given column-wise."""
    cols = list(cols)
    r1, r2, r1b, r2b, f, fi = (t.astype(np.int64) for t in vbq.arrays)
    m = vbq.n
    for g in b.letters:
        i = g.index - 1
        a, c = cols[i], cols[i + 1]
        if rep is RepKind.PHI:
            if g.kind is Kind.SIGMA:
                new = r1[a * m + c], r2[a * m + c]
            elif g.kind is Kind.SIGMA_INV:
                new = r1b[a * m + c], r2b[a * m + c]
            else:
                new = fi[c], f[a]
        else:
            if g.kind is Kind.SIGMA:
                new = r1[a * m + f[c]], r2[fi[a] * m + c]
            elif g.kind is Kind.SIGMA_INV:
                new = r1b[a * m + f[c]], r2b[fi[a] * m + c]
            else:
                new = c, a
        cols[i], cols[i + 1] = new
    return cols


@dataclass
class RelationFailure:
    family: str
    lhs: BraidWord
    rhs: BraidWord
    witness: tuple[int, ...]


@dataclass
class RepresentationReport:
    strands: int
    rep: RepKind
    relations_checked: int
    failure: RelationFailure | None = None

    @property
    def ok(self) -> bool:
        return self.failure is None


def check_representation(vbq: VirtualBiquandle, n: int, rep: RepKind | str,
                         budget: int = DEFAULT_BUDGET) -> RepresentationReport:
    """Check every VB_n relation (plus sigma_i sigma_i^-1 = 1) pointwise on X^n."""
    rep = RepKind(rep)
    m = vbq.n
    if m ** n > budget:
        raise BudgetExceeded(m ** n, budget)
    idx = np.arange(m ** n, dtype=np.int64)
    cols = [(idx // m ** (n - 1 - j)) % m for j in range(n)]
    rels = vb_relations(n)
    for i in range(1, n):
        rels.append(("sigma inverse", BraidWord(n, (Sigma(i), Sigma(i).inverse())), BraidWord(n)))
    for family, lhs, rhs in rels:
        left = act_all(vbq, lhs, rep, cols)
        right = act_all(vbq, rhs, rep, cols)
        diff = np.zeros(idx.shape, dtype=bool)
        for u, v in zip(left, right):
            diff |= u != v
        if diff.any():
            k = int(np.flatnonzero(diff)[0])
            return RepresentationReport(
                n, rep, len(rels), RelationFailure(family, lhs, rhs, decode_tuple(k, m, n))
            )
    return RepresentationReport(n, rep, len(rels))
