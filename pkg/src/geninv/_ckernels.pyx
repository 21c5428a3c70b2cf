# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; drop-in replacement for ``geninv._pykernels``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


def first_nonassociative(table):
    cdef const int[:, ::1] t = np.ascontiguousarray(table, dtype=np.int32)
    cdef Py_ssize_t n = t.shape[0]
    cdef Py_ssize_t i, j, k
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if t[t[i, j], k] != t[i, t[j, k]]:
                    return (int(i), int(j), int(k))
    return None


cdef bint _consistent(int[:, ::1] t, int n, int upto) noexcept nogil:
    cdef int x, y, z, p, q
    for x in range(n):
        for y in range(n):
            if x * n + y > upto:
                break
            p = t[x, y]
            for z in range(n):
                if y * n + z > upto or p * n + z > upto:
                    continue
                q = t[y, z]
                if x * n + q > upto:
                    continue
                if t[p, z] != t[x, q]:
                    return False
    return True


def enumerate_tables(int n, first_row=None):
    """All associative n x n tables, lexicographic in row-major order."""
    if n <= 0:
        return np.zeros((0, 0, 0), dtype=np.int32)
    cdef int cells = n * n
    cdef int[:, ::1] t = np.full((n, n), -1, dtype=np.int32)
    cdef int start = 0
    cdef int c, i, j
    out = []
    if first_row is not None:
        for j in range(n):
            t[0, j] = int(first_row[j])
        start = n
        if not _consistent(t, n, n - 1):
            return np.zeros((0, n, n), dtype=np.int32)
    if start == cells:
        out.append(np.asarray(t).copy())
        return np.asarray(out, dtype=np.int32)
    # iterative backtracking; t[cell] = -1 means unassigned
    c = start
    while c >= start:
        i = c // n
        j = c % n
        t[i, j] += 1
        if t[i, j] >= n:
            t[i, j] = -1
            c -= 1
            continue
        if not _consistent(t, n, c):
            continue
        if c == cells - 1:
            out.append(np.asarray(t).copy())
            continue
        c += 1
    if not out:
        return np.zeros((0, n, n), dtype=np.int32)
    return np.asarray(out, dtype=np.int32)


def green_matrices(table):
    cdef const int[:, ::1] t = np.ascontiguousarray(table, dtype=np.int32)
    cdef Py_ssize_t n = t.shape[0]
    Lnp = np.eye(n, dtype=np.uint8)
    Rnp = np.eye(n, dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] L = Lnp
    cdef cnp.uint8_t[:, ::1] R = Rnp
    cdef Py_ssize_t x, b
    for x in range(n):
        for b in range(n):
            L[t[x, b], b] = 1
            R[t[b, x], b] = 1
    return Lnp.astype(bool), Rnp.astype(bool)


def group_inverses(table, L, R):
    cdef const int[:, ::1] t = np.ascontiguousarray(table, dtype=np.int32)
    Hnp = np.ascontiguousarray(L & L.T & R & R.T, dtype=np.uint8)
    cdef const cnp.uint8_t[:, ::1] H = Hnp
    cdef Py_ssize_t n = t.shape[0]
    sharp_np = np.full(n, -1, dtype=np.int32)
    cdef int[::1] sharp = sharp_np
    cdef Py_ssize_t a, x
    for a in range(n):
        if not H[a, t[a, a]]:
            continue
        for x in range(n):
            if H[a, x] and t[x, a] == t[a, x] and t[t[a, x], a] == a and t[t[x, a], x] == x:
                sharp[a] = x
                break
    return sharp_np


def pair_sweep(table, L, R, sharp_in):
    cdef const int[:, ::1] t = np.ascontiguousarray(table, dtype=np.int32)
    cdef Py_ssize_t n = t.shape[0]
    Lc = np.ascontiguousarray(L, dtype=np.uint8)
    Rc = np.ascontiguousarray(R, dtype=np.uint8)
    cdef const cnp.uint8_t[:, ::1] Lv = Lc
    cdef const cnp.uint8_t[:, ::1] Rv = Rc
    cdef const int[::1] sharp = np.ascontiguousarray(sharp_in, dtype=np.int32)

    cond_np = np.zeros((n, n), dtype=np.uint8)
    def_np = np.zeros((n, n), dtype=np.int32)
    lem_np = np.zeros((n, n), dtype=np.int32)
    bdef_np = np.full((n, n), -1, dtype=np.int32)
    blem_np = np.full((n, n), -1, dtype=np.int32)
    fr_np = np.full((n, n), -1, dtype=np.int32)
    fl_np = np.full((n, n), -1, dtype=np.int32)
    bic_np = np.zeros((n, n), dtype=np.int32)
    cor_np = np.zeros((n, n), dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] cond = cond_np
    cdef int[:, ::1] def_count = def_np
    cdef int[:, ::1] lemma_count = lem_np
    cdef int[:, ::1] b_def = bdef_np
    cdef int[:, ::1] b_lemma = blem_np
    cdef int[:, ::1] formula_r = fr_np
    cdef int[:, ::1] formula_l = fl_np
    cdef int[:, ::1] bicomm_bad = bic_np
    cdef cnp.uint8_t[:, ::1] cor_bad = cor_np

    cdef Py_ssize_t a, d, b, x
    cdef int da, ad, dad, cnt, first, bb
    cdef cnp.uint8_t c
    cdef bint hd

    with nogil:
        for a in range(n):
            for d in range(n):
                da = t[d, a]
                ad = t[a, d]
                dad = t[da, d]
                cnt = 0
                first = -1
                for b in range(n):
                    if Lv[b, d] and Rv[b, d] and t[t[b, a], d] == d and t[da, b] == d:
                        if cnt == 0:
                            first = <int>b
                        cnt += 1
                def_count[a, d] = cnt
                b_def[a, d] = first
                cnt = 0
                first = -1
                for b in range(n):
                    hd = Lv[b, d] and Lv[d, b] and Rv[b, d] and Rv[d, b]
                    if hd and t[t[b, a], b] == b:
                        if cnt == 0:
                            first = <int>b
                        cnt += 1
                lemma_count[a, d] = cnt
                b_lemma[a, d] = first

                c = 1 if def_count[a, d] > 0 else 0
                if Rv[d, da] and sharp[da] >= 0:
                    c |= 2
                if Lv[d, ad] and sharp[ad] >= 0:
                    c |= 4
                if Lv[dad, d] and Lv[d, dad] and Rv[dad, d] and Rv[d, dad]:
                    c |= 8
                if Lv[d, dad] and Rv[d, dad]:
                    c |= 16
                cond[a, d] = c
                if sharp[ad] >= 0:
                    formula_r[a, d] = t[d, sharp[ad]]
                if sharp[da] >= 0:
                    formula_l[a, d] = t[sharp[da], d]

                bb = b_def[a, d]
                if bb >= 0:
                    cnt = 0
                    for x in range(n):
                        if (t[x, a] == t[a, x] and t[x, d] == t[d, x]
                                and t[x, bb] != t[bb, x]):
                            cnt += 1
                    bicomm_bad[a, d] = cnt
                    if ad == da and (t[a, bb] != t[bb, a] or t[bb, d] != t[d, bb]):
                        cor_bad[a, d] = 1
    return {
        "cond": cond_np,
        "def_count": def_np,
        "lemma_count": lem_np,
        "b_def": bdef_np,
        "b_lemma": blem_np,
        "formula_r": fr_np,
        "formula_l": fl_np,
        "bicomm_bad": bic_np,
        "cor_bad": cor_np.astype(bool),
    }
