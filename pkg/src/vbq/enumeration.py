"""Exhaustive catalogs of small biquandles and virtual biquandles.

Isomorphism classes are identified by a canonical key: the lexicographically
least serialization ``r1 + r2 (+ f)`` over all relabelings of the carrier.
"""
from __future__ import annotations

import itertools
import warnings
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

from . import kernels
from .algebra import OperatorTable
from .errors import ParameterError

MAX_SIZE = 4
HARD_MAX_SIZE = 5
MAX_CANONICAL_SIZE = 7

CanonicalKey = tuple[int, ...]


def _relabel_f(f: Sequence[int], sigma: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(f)
    for x, fx in enumerate(f):
        out[sigma[x]] = sigma[fx]
    return tuple(out)


def canonical_form(op: OperatorTable, f: Sequence[int] | None = None):
    """``(key, op', f')`` where ``op'``/``f'`` is the relabeling achieving the key."""
    n = op.n
    if n > MAX_CANONICAL_SIZE:
        raise ParameterError(f"canonical keys are limited to n <= {MAX_CANONICAL_SIZE}")
    best = None
    for sigma in itertools.permutations(range(n)):
        rel = op.relabel(sigma)
        key = rel.r1 + rel.r2
        g = None
        if f is not None:
            g = _relabel_f(f, sigma)
            key += g
        if best is None or key < best[0]:
            best = (key, rel, g)
    return best


def canonical_key(op: OperatorTable, f: Sequence[int] | None = None) -> CanonicalKey:
    return canonical_form(op, f)[0]


def _check_size(n: int, allow_large: bool):
    if n < 1:
        raise ParameterError("size must be positive")
    if n > HARD_MAX_SIZE or (n > MAX_SIZE and not allow_large):
        raise ParameterError(
            f"size {n} exceeds the enumeration limit {MAX_SIZE}"
            + ("" if n > HARD_MAX_SIZE else " (pass allow_large for n=5)")
        )
    if n > MAX_SIZE:
        warnings.warn(f"enumerating biquandles of size {n} is very slow", RuntimeWarning, stacklevel=3)


def enumerate_biquandles(n: int, up_to_iso: bool = False, allow_large: bool = False,
                         workers: int = 1, backend: str | None = None) -> list[OperatorTable]:
    """Every biquandle operator on ``{0..n-1}``, sorted by (canonical key, tables).

    With ``up_to_iso`` one structure per isomorphism class is returned, namely
    its canonical relabeling.  The search is split by the first row of R1.
    """
    _check_size(n, allow_large)
    kern = kernels.get_backend(backend)
    rows = list(itertools.permutations(range(n)))

    def run(row):
        return kern.search_biquandles(n, row)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, rows))
    else:
        parts = [run(r) for r in rows]
    tables = [OperatorTable(n, r1, r2) for part in parts for r1, r2 in part]
    keyed = sorted(((canonical_form(op), op) for op in tables), key=lambda p: (p[0][0], p[1].r1, p[1].r2))
    if not up_to_iso:
        return [op for _, op in keyed]
    out, last = [], None
    for (key, rep, _), _op in keyed:
        if key != last:
            out.append(rep)
            last = key
    return out


def automorphisms(op: OperatorTable) -> list[tuple[int, ...]]:
    n = op.n
    out = []
    for f in itertools.permutations(range(n)):
        if all(op(f[x], f[y]) == tuple(f[v] for v in op(x, y)) for x in range(n) for y in range(n)):
            out.append(f)
    return out


def enumerate_virtual(n: int, up_to_iso: bool = False, allow_large: bool = False,
                      workers: int = 1, backend: str | None = None) -> list[tuple[OperatorTable, tuple[int, ...]]]:
    """Every pair (R, f) with f an automorphism of the biquandle R."""
    base = enumerate_biquandles(n, up_to_iso, allow_large, workers, backend)
    pairs = [(op, f) for op in base for f in automorphisms(op)]
    if not up_to_iso:
        return pairs
    seen = {}
    for op, f in pairs:
        key, rel, g = canonical_form(op, f)
        seen.setdefault(key, (rel, g))
    return [seen[k] for k in sorted(seen)]

