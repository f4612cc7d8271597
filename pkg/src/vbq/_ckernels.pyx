# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the hot kernels; see ``_pykernels`` for the contracts."""

import numpy as np
from libc.stdlib cimport calloc, free, realloc

DEF MAXN = 16
DEF MAXSTRANDS = 64


def ybe_violation(r1_in, r2_in, int n):
    cdef int[::1] r1 = np.ascontiguousarray(r1_in, dtype=np.int32)
    cdef int[::1] r2 = np.ascontiguousarray(r2_in, dtype=np.int32)
    cdef int x, y, z, a1, a2, b1, b2, c1, c2, d1, d2, eq = 0
    with nogil:
        for x in range(n):
            for y in range(n):
                a1 = r1[x * n + y]
                a2 = r2[x * n + y]
                for z in range(n):
                    b1 = r1[a2 * n + z]
                    b2 = r2[a2 * n + z]
                    c1 = r1[y * n + z]
                    c2 = r2[y * n + z]
                    d1 = r1[x * n + c1]
                    d2 = r2[x * n + c1]
                    if r1[a1 * n + b1] != d1:
                        eq = 1
                    elif r2[a1 * n + b1] != r1[d2 * n + c2]:
                        eq = 2
                    elif b2 != r2[d2 * n + c2]:
                        eq = 3
                    if eq:
                        break
                if eq:
                    break
            if eq:
                break
    if eq:
        return x, y, z, eq
    return None


cdef inline void _apply(int *t, int[:, ::1] prog, int plen, int m,
                        int[::1] r1, int[::1] r2, int[::1] r1b, int[::1] r2b,
                        int[::1] f, int[::1] finv) noexcept nogil:
    cdef int s, op, i, a, b, k
    for s in range(plen):
        op = prog[s, 0]
        i = prog[s, 1]
        a = t[i]
        b = t[i + 1]
        if op == 0:
            k = a * m + b
            t[i] = r1[k]
            t[i + 1] = r2[k]
        elif op == 1:
            k = a * m + b
            t[i] = r1b[k]
            t[i + 1] = r2b[k]
        elif op == 2:
            t[i] = finv[b]
            t[i + 1] = f[a]
        elif op == 3:
            t[i] = r1[a * m + f[b]]
            t[i + 1] = r2[finv[a] * m + b]
        elif op == 4:
            t[i] = r1b[a * m + f[b]]
            t[i + 1] = r2b[finv[a] * m + b]
        else:
            t[i] = b
            t[i + 1] = a


def fixed_points(r1_in, r2_in, r1b_in, r2b_in, f_in, finv_in, int m, int strands,
                 program, long long lo, long long hi, bint want_witnesses):
    cdef int[::1] r1 = np.ascontiguousarray(r1_in, dtype=np.int32)
    cdef int[::1] r2 = np.ascontiguousarray(r2_in, dtype=np.int32)
    cdef int[::1] r1b = np.ascontiguousarray(r1b_in, dtype=np.int32)
    cdef int[::1] r2b = np.ascontiguousarray(r2b_in, dtype=np.int32)
    cdef int[::1] f = np.ascontiguousarray(f_in, dtype=np.int32)
    cdef int[::1] finv = np.ascontiguousarray(finv_in, dtype=np.int32)
    prog_arr = np.ascontiguousarray(np.asarray(program, dtype=np.int32).reshape(-1, 2))
    cdef int[:, ::1] prog = prog_arr
    cdef int plen = prog_arr.shape[0]
    if strands > MAXSTRANDS:
        raise ValueError("too many strands for the compiled kernel")
    cdef int orig[MAXSTRANDS]
    cdef int work[MAXSTRANDS]
    cdef long long block = 1, idx, start, stop, count = 0
    cdef int j, same
    for j in range(strands - 1):
        block *= m
    start = lo * block
    stop = hi * block
    witnesses = [] if want_witnesses else None
    if start >= stop:
        return 0, witnesses
    # odometer initialised at tuple index `start`
    idx = start
    for j in range(strands - 1, -1, -1):
        orig[j] = <int>(idx % m)
        idx //= m
    with nogil:
        for idx in range(start, stop):
            for j in range(strands):
                work[j] = orig[j]
            _apply(work, prog, plen, m, r1, r2, r1b, r2b, f, finv)
            same = 1
            for j in range(strands):
                if work[j] != orig[j]:
                    same = 0
                    break
            if same:
                count += 1
                if want_witnesses:
                    with gil:
                        witnesses.append(idx)
            j = strands - 1
            while j >= 0:
                orig[j] += 1
                if orig[j] < m:
                    break
                orig[j] = 0
                j -= 1
    return count, witnesses


cdef struct Search:
    int n
    int r1[MAXN * MAXN]
    int r2[MAXN * MAXN]
    char used[MAXN * MAXN]
    int row_fixed[MAXN]
    int col_fixed[MAXN]
    int pin[MAXN]
    int pinned
    int *sol        # solutions, 2*n*n ints each
    long nsol
    long cap
    bint oom


cdef bint _ybe_consistent(Search *s) noexcept nogil:
    cdef int n = s.n
    cdef int x, y, z, a1, a2, b1, b2, c1, c2, d1, d2, lhs1, lhs2, rhs
    cdef int *r1 = s.r1
    cdef int *r2 = s.r2
    for x in range(n):
        for y in range(n):
            a1 = r1[x * n + y]
            a2 = r2[x * n + y]
            for z in range(n):
                c1 = r1[y * n + z]
                c2 = r2[y * n + z]
                b1 = -1
                b2 = -1
                d1 = -1
                d2 = -1
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
                    lhs1 = -1
                    lhs2 = -1
                if lhs1 >= 0 and d1 >= 0 and lhs1 != d1:
                    return False
                if d2 >= 0 and c2 >= 0:
                    if lhs2 >= 0:
                        rhs = r1[d2 * n + c2]
                        if rhs >= 0 and lhs2 != rhs:
                            return False
                    if b2 >= 0:
                        rhs = r2[d2 * n + c2]
                        if rhs >= 0 and b2 != rhs:
                            return False
    return True


cdef void _record(Search *s) noexcept nogil:
    cdef int nn = s.n * s.n
    cdef int i
    cdef int *grown
    if s.nsol == s.cap:
        grown = <int *>realloc(s.sol, 2 * nn * (2 * s.cap + 16) * sizeof(int))
        if grown == NULL:
            s.oom = True
            return
        s.sol = grown
        s.cap = 2 * s.cap + 16
    for i in range(nn):
        s.sol[2 * nn * s.nsol + i] = s.r1[i]
        s.sol[2 * nn * s.nsol + nn + i] = s.r2[i]
    s.nsol += 1


cdef void _rec(Search *s, int k) noexcept nogil:
    cdef int n = s.n
    cdef int nn = n * n
    cdef int x, y, u, v, i
    cdef bint clash, fixed
    if s.oom:
        return
    if k == nn:
        _record(s)
        return
    x = k // n
    y = k % n
    for u in range(n):
        if s.pinned and x == 0 and u != s.pin[y]:
            continue
        clash = False
        for i in range(y):
            if s.r1[x * n + i] == u:
                clash = True
                break
        if clash:
            continue
        for v in range(n):
            if s.used[u * n + v]:
                continue
            clash = False
            for i in range(x):
                if s.r2[i * n + y] == v:
                    clash = True
                    break
            if clash:
                continue
            fixed = u == x and v == y
            if fixed and (s.row_fixed[x] or s.col_fixed[y]):
                continue
            if y == n - 1 and not (s.row_fixed[x] or fixed):
                continue
            if x == n - 1 and not (s.col_fixed[y] or fixed):
                continue
            s.r1[k] = u
            s.r2[k] = v
            s.used[u * n + v] = 1
            if fixed:
                s.row_fixed[x] += 1
                s.col_fixed[y] += 1
            if _ybe_consistent(s):
                _rec(s, k + 1)
            if fixed:
                s.row_fixed[x] -= 1
                s.col_fixed[y] -= 1
            s.used[u * n + v] = 0
            s.r1[k] = -1
            s.r2[k] = -1


def search_biquandles(int n, row0):
    if n > MAXN:
        raise ValueError("carrier too large for the compiled search")
    cdef Search *s = <Search *>calloc(1, sizeof(Search))
    cdef int i, nn = n * n
    cdef long j
    if s == NULL:
        raise MemoryError()
    try:
        s.n = n
        for i in range(MAXN * MAXN):
            s.r1[i] = -1
            s.r2[i] = -1
        row0 = list(row0)
        s.pinned = len(row0) > 0
        for i in range(len(row0)):
            s.pin[i] = row0[i]
        with nogil:
            _rec(s, 0)
        if s.oom:
            raise MemoryError()
        return [
            (tuple([s.sol[2 * nn * j + i] for i in range(nn)]),
             tuple([s.sol[2 * nn * j + nn + i] for i in range(nn)]))
            for j in range(s.nsol)
        ]
    finally:
        free(s.sol)
        free(s)
