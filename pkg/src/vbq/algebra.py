"""Finite Yang-Baxter operators, biquandle and virtual-biquandle validation,
the twisted operator VR, and the standard example families.

Carrier elements are the integers ``0..n-1``.  An operator
``R(x, y) = (R1(x, y), R2(x, y))`` is stored as two flat tables indexed by
``x * n + y``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .errors import AxiomError, ParameterError, StructureError

Perm = tuple[int, ...]


@dataclass(frozen=True)
class OperatorTable:
    n: int
    r1: tuple[int, ...]
    r2: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise StructureError(f"carrier size must be positive, got {self.n}")
        for name in ("r1", "r2"):
            table = getattr(self, name)
            if len(table) != self.n * self.n:
                raise StructureError(
                    f"{name} has {len(table)} entries, expected {self.n}x{self.n}"
                )
            for k, v in enumerate(table):
                if not isinstance(v, (int, np.integer)) or not 0 <= v < self.n:
                    x, y = divmod(k, self.n)
                    raise StructureError(
                        f"{name}[{x}][{y}] = {v!r} is outside 0..{self.n - 1}"
                    )
        object.__setattr__(self, "r1", tuple(int(v) for v in self.r1))
        object.__setattr__(self, "r2", tuple(int(v) for v in self.r2))

    @classmethod
    def from_rows(cls, r1_rows: Sequence[Sequence[int]], r2_rows: Sequence[Sequence[int]]):
        n = len(r1_rows)
        for name, rows in (("R1", r1_rows), ("R2", r2_rows)):
            if len(rows) != n or any(len(row) != n for row in rows):
                raise StructureError(f"{name} table is not {n}x{n}")
        return cls(n, tuple(v for row in r1_rows for v in row), tuple(v for row in r2_rows for v in row))

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int, int], tuple[int, int]]):
        pairs = [fn(x, y) for x in range(n) for y in range(n)]
        return cls(n, tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    def __call__(self, x: int, y: int) -> tuple[int, int]:
        k = x * self.n + y
        return self.r1[k], self.r2[k]

    def rows(self, which: int) -> list[list[int]]:
        table = self.r1 if which == 1 else self.r2
        n = self.n
        return [list(table[x * n:(x + 1) * n]) for x in range(n)]

    @cached_property
    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return np.array(self.r1, dtype=np.int32), np.array(self.r2, dtype=np.int32)

    def relabel(self, sigma: Sequence[int]) -> "OperatorTable":
        """Transport the operator along the carrier bijection ``x -> sigma[x]``."""
        n = self.n
        r1 = [0] * (n * n)
        r2 = [0] * (n * n)
        for x in range(n):
            for y in range(n):
                k = x * n + y
                j = sigma[x] * n + sigma[y]
                r1[j] = sigma[self.r1[k]]
                r2[j] = sigma[self.r2[k]]
        return OperatorTable(n, tuple(r1), tuple(r2))


@dataclass(frozen=True)
class AxiomVerdict:
    name: str
    passed: bool
    witness: tuple | None = None
    detail: str = ""


@dataclass
class AxiomReport:
    """Verdict for every axiom checked, with a witness for each failure."""

    verdicts: list[AxiomVerdict] = field(default_factory=list)
    structure: "ValidatedBiquandle | VirtualBiquandle | None" = None

    @property
    def ok(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def __bool__(self) -> bool:
        return self.ok

    def __getitem__(self, name: str) -> AxiomVerdict:
        for v in self.verdicts:
            if v.name == name:
                return v
        raise KeyError(name)

    def failed(self) -> list[AxiomVerdict]:
        return [v for v in self.verdicts if not v.passed]

    def failure_lines(self) -> list[str]:
        return [f"{v.name}: {v.detail}" for v in self.failed()]

    def lines(self) -> list[str]:
        out = []
        for v in self.verdicts:
            if v.passed:
                out.append(f"PASS {v.name}")
            else:
                out.append(f"FAIL {v.name}: {v.detail}")
        return out


@dataclass(frozen=True)
class ValidatedBiquandle:
    op: OperatorTable
    r1bar: tuple[int, ...]
    r2bar: tuple[int, ...]
    left_div: tuple[int, ...]   # left_div[x*n + z] = y with R1(x, y) = z
    right_div: tuple[int, ...]  # right_div[y*n + w] = x with R2(x, y) = w
    fixed_pairs: tuple[tuple[int, int], ...]  # (a, x) with R(x, a) = (x, a)

    @property
    def n(self) -> int:
        return self.op.n

    @property
    def r1(self):
        return self.op.r1

    @property
    def r2(self):
        return self.op.r2


@dataclass(frozen=True)
class VirtualBiquandle:
    """A biquandle together with an automorphism ``f`` (identity for plain biquandles)."""

    bq: ValidatedBiquandle
    f: Perm
    f_inv: Perm

    @property
    def n(self) -> int:
        return self.bq.n

    @property
    def op(self) -> OperatorTable:
        return self.bq.op

    def f_power(self, k: int, x: int) -> int:
        step = self.f if k >= 0 else self.f_inv
        for _ in range(abs(k)):
            x = step[x]
        return x

    @cached_property
    def arrays(self) -> tuple[np.ndarray, ...]:
        """``(r1, r2, r1bar, r2bar, f, f_inv)`` as int32 arrays for the kernels."""
        return tuple(
            np.array(t, dtype=np.int32)
            for t in (self.bq.r1, self.bq.r2, self.bq.r1bar, self.bq.r2bar, self.f, self.f_inv)
        )


def check_permutation(p: Sequence[int], n: int, what: str = "f") -> Perm:
    if len(p) != n:
        raise StructureError(f"{what} has length {len(p)}, expected {n}")
    if sorted(p) != list(range(n)):
        raise StructureError(f"{what} = {list(p)} is not a permutation of 0..{n - 1}")
    return tuple(int(v) for v in p)


def inverse_permutation(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def invert_operator(op: OperatorTable) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Tables of the inverse map R̄ with R̄(R(x, y)) = (x, y).

    Raises StructureError naming two colliding inputs when R is not a bijection.
    """
    n = op.n
    r1b = [-1] * (n * n)
    r2b = [-1] * (n * n)
    for x in range(n):
        for y in range(n):
            u, v = op(x, y)
            j = u * n + v
            if r1b[j] >= 0:
                raise StructureError(
                    f"R is not invertible: R{(r1b[j], r2b[j])} = R{(x, y)} = {(u, v)}"
                )
            r1b[j], r2b[j] = x, y
    return tuple(r1b), tuple(r2b)


def _section_inverse(op: OperatorTable, which: int):
    """Division table of R1 rows (which=1) or R2 columns (which=2), or a witness.

    Returns ``(table, None)`` on success and ``(None, witness)`` on failure,
    with witness ``(x, y, y')`` (R1(x,y) = R1(x,y')) or ``(y, x, x')``.
    """
    n = op.n
    div = [-1] * (n * n)
    for a in range(n):
        for b in range(n):
            if which == 1:
                key, val = a, op.r1[a * n + b]
            else:
                key, val = a, op.r2[b * n + a]
            j = key * n + val
            if div[j] >= 0:
                return None, (a, div[j], b)
            div[j] = b
    return tuple(div), None


def _type1_fixed(op: OperatorTable):
    n = op.n
    by_second = {a: [x for x in range(n) if op(x, a) == (x, a)] for a in range(n)}
    by_first = {a: [y for y in range(n) if op(a, y) == (a, y)] for a in range(n)}
    return by_second, by_first


def validate_biquandle(op: OperatorTable) -> AxiomReport:
    """Check all biquandle axioms exhaustively and report every failure.

    The Yang-Baxter check is O(n^3).  On success ``report.structure`` holds a
    :class:`ValidatedBiquandle` with the derived inverse and division tables.
    """
    n = op.n
    verdicts = []

    hit = kernels.ybe_violation(*op.arrays, n)
    if hit is None:
        verdicts.append(AxiomVerdict("yang-baxter", True))
    else:
        x, y, z, eq = hit
        verdicts.append(AxiomVerdict(
            "yang-baxter", False, (x, y, z),
            f"both sides differ at (x,y,z)={(x, y, z)} in coordinate {eq}",
        ))

    try:
        r1bar, r2bar = invert_operator(op)
        verdicts.append(AxiomVerdict("invertible", True))
    except StructureError as exc:
        r1bar = r2bar = None
        collision = [(x, y) for x in range(n) for y in range(n)]
        seen = {}
        witness = None
        for p in collision:
            img = op(*p)
            if img in seen:
                witness = (seen[img], p)
                break
            seen[img] = p
        verdicts.append(AxiomVerdict("invertible", False, witness, str(exc)))

    left_div, w = _section_inverse(op, 1)
    verdicts.append(AxiomVerdict(
        "left-invertible", w is None, w,
        "" if w is None else f"R1({w[0]},{w[1]}) = R1({w[0]},{w[2]})",
    ))
    right_div, w = _section_inverse(op, 2)
    verdicts.append(AxiomVerdict(
        "right-invertible", w is None, w,
        "" if w is None else f"R2({w[1]},{w[0]}) = R2({w[2]},{w[0]})",
    ))

    by_second, by_first = _type1_fixed(op)
    bad = next((a for a in range(n) if len(by_second[a]) != 1), None)
    verdicts.append(AxiomVerdict(
        "type I", bad is None,
        None if bad is None else (bad, tuple(by_second[bad])),
        "" if bad is None else
        f"a={bad} has {len(by_second[bad])} values x with R(x,a)=(x,a): {by_second[bad]}",
    ))
    bad = next((a for a in range(n) if len(by_first[a]) != 1), None)
    verdicts.append(AxiomVerdict(
        "type I (dual form)", bad is None,
        None if bad is None else (bad, tuple(by_first[bad])),
        "" if bad is None else
        f"a={bad} has {len(by_first[bad])} values y with R(a,y)=(a,y): {by_first[bad]}",
    ))

    report = AxiomReport(verdicts)
    if report.ok:
        report.structure = ValidatedBiquandle(
            op, r1bar, r2bar, left_div, right_div,
            tuple((a, by_second[a][0]) for a in range(n)),
        )
    return report


def is_biquandle(op: OperatorTable) -> bool:
    """Fast boolean path: stops at the first failing axiom."""
    n = op.n
    if len(set(zip(op.r1, op.r2))) != n * n:
        return False
    for x in range(n):
        if len(set(op.r1[x * n:(x + 1) * n])) != n:
            return False
        if len(set(op.r2[x::n])) != n:
            return False
    for a in range(n):
        if sum(op(x, a) == (x, a) for x in range(n)) != 1:
            return False
        if sum(op(a, y) == (a, y) for y in range(n)) != 1:
            return False
    return kernels.ybe_violation(*op.arrays, n) is None


def _automorphism_witness(op: OperatorTable, f: Perm):
    n = op.n
    for x in range(n):
        for y in range(n):
            u, v = op(x, y)
            if op(f[x], f[y]) != (f[u], f[v]):
                return x, y
    return None


def validate_virtual(op: OperatorTable, f: Sequence[int] | None = None) -> AxiomReport:
    """Biquandle axioms plus the automorphism condition on ``f`` (identity if None)."""
    f = tuple(range(op.n)) if f is None else check_permutation(f, op.n)
    report = validate_biquandle(op)
    w = _automorphism_witness(op, f)
    report.verdicts.append(AxiomVerdict(
        "f automorphism", w is None, w,
        "" if w is None else
        f"R(f({w[0]}),f({w[1]})) = {op(f[w[0]], f[w[1]])} but (f x f)(R({w[0]},{w[1]})) = "
        f"{tuple(f[v] for v in op(*w))}",
    ))
    if report.ok:
        report.structure = VirtualBiquandle(report.structure, f, inverse_permutation(f))
    else:
        report.structure = None
    return report


def biquandle(op: OperatorTable) -> ValidatedBiquandle:
    report = validate_biquandle(op)
    if not report.ok:
        raise AxiomError(report)
    return report.structure


def virtual(op: OperatorTable, f: Sequence[int] | None = None) -> VirtualBiquandle:
    """Validated ``(X, f, R)``; raises AxiomError with the full report otherwise."""
    report = validate_virtual(op, f)
    if not report.ok:
        raise AxiomError(report)
    return report.structure


def derive_vr(vbq: VirtualBiquandle) -> OperatorTable:
    """VR(x, y) = (R1(x, f(y)), R2(f^-1(x), y))."""
    op, f, fi = vbq.op, vbq.f, vbq.f_inv
    return OperatorTable.from_function(op.n, lambda x, y: (op(x, f[y])[0], op(fi[x], y)[1]))


def is_homomorphism(mapping: Sequence[int] | Mapping[int, int],
                    src: VirtualBiquandle, dst: VirtualBiquandle) -> bool:
    h = [mapping[x] for x in range(src.n)]
    if any(not 0 <= v < dst.n for v in h):
        return False
    for x in range(src.n):
        if h[src.f[x]] != dst.f[h[x]]:
            return False
        for y in range(src.n):
            u, v = src.op(x, y)
            if dst.op(h[x], h[y]) != (h[u], h[v]):
                return False
    return True


def homomorphisms(src: VirtualBiquandle, dst: VirtualBiquandle) -> Iterable[Perm]:
    """Every homomorphism src -> dst, by exhaustion over dst.n ** src.n maps."""
    for h in itertools.product(range(dst.n), repeat=src.n):
        if is_homomorphism(h, src, dst):
            yield h


# ---------------------------------------------------------------------------
# example families

def swap_operator(n: int) -> OperatorTable:
    return OperatorTable.from_function(n, lambda x, y: (y, x))


def identity_operator(n: int) -> OperatorTable:
    return OperatorTable.from_function(n, lambda x, y: (x, y))


def cyclic_group(n: int) -> list[list[int]]:
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def symmetric_group(k: int) -> list[list[int]]:
    """Cayley table of S_k; element i is the i-th permutation in lexicographic
    order and (p*q)(j) = p(q(j))."""
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    return [[index[tuple(p[q[j]] for j in range(k))] for q in perms] for p in perms]


def check_group(cayley: Sequence[Sequence[int]]) -> tuple[int, list[int]]:
    """Validate a group multiplication table; returns (identity, inverses)."""
    n = len(cayley)
    if n == 0 or any(len(row) != n for row in cayley):
        raise StructureError("group table is not square")
    if any(not 0 <= v < n for row in cayley for v in row):
        raise StructureError("group table: closure fails (entry out of range)")
    e = next((a for a in range(n) if all(cayley[a][x] == x and cayley[x][a] == x for x in range(n))), None)
    if e is None:
        raise StructureError("group table: identity axiom fails")
    inv = []
    for a in range(n):
        b = next((b for b in range(n) if cayley[a][b] == e and cayley[b][a] == e), None)
        if b is None:
            raise StructureError(f"group table: inverse axiom fails for element {a}")
        inv.append(b)
    for a, b, c in itertools.product(range(n), repeat=3):
        if cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]]:
            raise StructureError(f"group table: associativity fails at {(a, b, c)}")
    return e, inv


def wada_from_group(cayley: Sequence[Sequence[int]]) -> OperatorTable:
    """Wada operator R(x, y) = (x^-1 y^-1 x, y^2 x) on a finite group."""
    _, inv = check_group(cayley)
    g = cayley

    def wada(x, y):
        return g[g[inv[x]][inv[y]]][x], g[g[y][y]][x]

    return OperatorTable.from_function(len(cayley), wada)


def linear_biquandle(n: int, alpha: int, beta: int) -> OperatorTable:
    """R(x, y) = ((1-a)x + a y, b x + (1-b) y) over Z/n, needing units a, b
    with (1-a)(1-b) = 0."""
    if n < 1:
        raise ParameterError("modulus must be positive")
    alpha %= n
    beta %= n
    for name, v in (("alpha", alpha), ("beta", beta)):
        if gcd(v, n) != 1:
            raise ParameterError(f"{name}={v} is not a unit mod {n}")
    if ((1 - alpha) * (1 - beta)) % n != 0:
        raise ParameterError(f"(1-alpha)(1-beta) = {(1 - alpha) * (1 - beta) % n} != 0 mod {n}")
    return OperatorTable.from_function(
        n, lambda x, y: (((1 - alpha) * x + alpha * y) % n, (beta * x + (1 - beta) * y) % n)
    )
