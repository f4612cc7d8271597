"""Pure-Python (numpy-vectorised where it pays) versions of the hot kernels.

Every function here has an identical signature and identical results in
``_ckernels.pyx``; ``vbq.kernels`` picks one at import time.
"""
from __future__ import annotations

import numpy as np

# opcodes of a compiled braid program, one row (opcode, zero-based position) per letter
PHI_SIGMA, PHI_SIGMA_INV, PHI_RHO, PSI_SIGMA, PSI_SIGMA_INV, PSI_RHO = range(6)

_CHUNK = 1 << 18


def ybe_violation(r1, r2, n):
    """First (x, y, z, equation) at which the Yang-Baxter equation fails, else None.

    Triples are scanned in lexicographic order and the three coordinate
    equations in order 1, 2, 3.
    """
    r1 = np.asarray(r1, dtype=np.int64)
    r2 = np.asarray(r2, dtype=np.int64)
    x, y, z = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    x, y, z = x.ravel(), y.ravel(), z.ravel()
    # left side: (R x id)(id x R)(R x id), rightmost factor first
    a1, a2 = r1[x * n + y], r2[x * n + y]
    b1, b2 = r1[a2 * n + z], r2[a2 * n + z]
    lhs = (r1[a1 * n + b1], r2[a1 * n + b1], b2)
    # right side: (id x R)(R x id)(id x R)
    c1, c2 = r1[y * n + z], r2[y * n + z]
    d1, d2 = r1[x * n + c1], r2[x * n + c1]
    rhs = (d1, r1[d2 * n + c2], r2[d2 * n + c2])
    bad = np.stack([lhs[k] != rhs[k] for k in range(3)])
    hits = np.flatnonzero(bad.any(axis=0))
    if hits.size == 0:
        return None
    i = int(hits[0])
    eq = int(np.flatnonzero(bad[:, i])[0]) + 1
    return int(x[i]), int(y[i]), int(z[i]), eq


def _apply_program(cols, program, r1, r2, r1b, r2b, f, finv, m):
    for op, i in program:
        a, b = cols[i], cols[i + 1]
        if op == PHI_SIGMA:
            k = a * m + b
            cols[i], cols[i + 1] = r1[k], r2[k]
        elif op == PHI_SIGMA_INV:
            k = a * m + b
            cols[i], cols[i + 1] = r1b[k], r2b[k]
        elif op == PHI_RHO:
            cols[i], cols[i + 1] = finv[b], f[a]
        elif op == PSI_SIGMA:
            cols[i], cols[i + 1] = r1[a * m + f[b]], r2[finv[a] * m + b]
        elif op == PSI_SIGMA_INV:
            cols[i], cols[i + 1] = r1b[a * m + f[b]], r2b[finv[a] * m + b]
        elif op == PSI_RHO:
            cols[i], cols[i + 1] = b, a
        else:
            raise ValueError(f"bad opcode {op}")


def fixed_points(r1, r2, r1b, r2b, f, finv, m, strands, program, lo, hi, want_witnesses):
    """Count tuples of X^strands fixed by the program, first coordinate in [lo, hi).

    Tuples are indexed in base ``m`` with the first coordinate most
    significant.  Returns ``(count, witnesses)`` where ``witnesses`` is a
    sorted list of tuple indices, or None.
    """
    tabs = [np.asarray(t, dtype=np.int64) for t in (r1, r2, r1b, r2b, f, finv)]
    program = [(int(op), int(i)) for op, i in program]
    block = m ** (strands - 1)
    start, stop = lo * block, hi * block
    weights = [m ** (strands - 1 - j) for j in range(strands)]
    count = 0
    witnesses = [] if want_witnesses else None
    for s in range(start, stop, _CHUNK):
        idx = np.arange(s, min(s + _CHUNK, stop), dtype=np.int64)
        orig = [(idx // w) % m for w in weights]
        cols = list(orig)
        _apply_program(cols, program, *tabs, m)
        same = np.ones(idx.shape, dtype=bool)
        for c, o in zip(cols, orig):
            same &= c == o
        count += int(same.sum())
        if want_witnesses:
            witnesses.extend(int(v) for v in idx[same])
    return count, witnesses


def search_biquandles(n, row0):
    """All biquandle operator tables on n elements, as ``(r1, r2)`` flat tuples.

    Cells are filled in row-major order, assigning ``(R1(x,y), R2(x,y))``
    together.  Pruning: rows of R1 and columns of R2 all-different, pairs
    all-different (R bijective), at most one fixed pair per row and column
    (both forms of the type I condition), and every fully determined
    Yang-Baxter equation instance.  A non-empty ``row0`` pins the first row
    of R1.
    """
    nn = n * n
    r1 = [-1] * nn
    r2 = [-1] * nn
    used = [False] * nn
    row_fixed = [0] * n
    col_fixed = [0] * n
    pin = list(row0)
    out = []

    def ybe_consistent():
        for x in range(n):
            for y in range(n):
                a1 = r1[x * n + y]
                a2 = r2[x * n + y]
                for z in range(n):
                    c1 = r1[y * n + z]
                    c2 = r2[y * n + z]
                    b1 = b2 = d1 = d2 = -1
                    if a2 >= 0:
                        b1 = r1[a2 * n + z]
                        b2 = r2[a2 * n + z]
                    if c1 >= 0:
                        d1 = r1[x * n + c1]
                        d2 = r2[x * n + c1]
                    if a1 >= 0 and b1 >= 0:
                        lhs1 = r1[a1 * n + b1]
                        lhs2 = r2[a1 * n + b1]
                    else:
                        lhs1 = lhs2 = -1
                    if lhs1 >= 0 and d1 >= 0 and lhs1 != d1:
                        return False
                    if d2 >= 0 and c2 >= 0:
                        if lhs2 >= 0:
                            rhs2 = r1[d2 * n + c2]
                            if rhs2 >= 0 and lhs2 != rhs2:
                                return False
                        if b2 >= 0:
                            rhs3 = r2[d2 * n + c2]
                            if rhs3 >= 0 and b2 != rhs3:
                                return False
        return True

    def rec(k):
        if k == nn:
            out.append((tuple(r1), tuple(r2)))
            return
        x, y = divmod(k, n)
        for u in range(n):
            if pin and x == 0 and u != pin[y]:
                continue
            if u in r1[x * n: x * n + y]:
                continue
            for v in range(n):
                if used[u * n + v]:
                    continue
                if any(r2[i * n + y] == v for i in range(x)):
                    continue
                fixed = u == x and v == y
                if fixed and (row_fixed[x] or col_fixed[y]):
                    continue
                if y == n - 1 and not (row_fixed[x] or fixed):
                    continue
                if x == n - 1 and not (col_fixed[y] or fixed):
                    continue
                r1[k], r2[k] = u, v
                used[u * n + v] = True
                if fixed:
                    row_fixed[x] += 1
                    col_fixed[y] += 1
                if ybe_consistent():
                    rec(k + 1)
                if fixed:
                    row_fixed[x] -= 1
                    col_fixed[y] -= 1
                used[u * n + v] = False
                r1[k] = r2[k] = -1

    rec(0)
    return out
