"""Reference (numpy / pure-Python) implementations of the hot kernels.

Same signatures and outputs as the compiled ``_ckernels`` module. Tables are
C-contiguous ``int32`` arrays; boolean results are ``bool`` arrays.
"""

import numpy as np

BACKEND = "python"


def first_nonassociative(table):
    t = np.asarray(table)
    n = t.shape[0]
    # left[i, j, k] = (ij)k, right[i, j, k] = i(jk)
    left = t[t[:, :, None], np.arange(n)[None, None, :]]
    right = t[np.arange(n)[:, None, None], t[None, :, :]]
    bad = np.argwhere(left != right)
    if len(bad) == 0:
        return None
    return tuple(int(v) for v in bad[0])


def _consistent(t, n, upto):
    # every triple whose four products are already assigned must associate
    for x in range(n):
        for y in range(n):
            if x * n + y > upto:
                break
            p = t[x][y]
            for z in range(n):
                if y * n + z > upto or p * n + z > upto:
                    continue
                q = t[y][z]
                if x * n + q > upto:
                    continue
                if t[p][z] != t[x][q]:
                    return False
    return True


def enumerate_tables(n, first_row=None):
    """All associative n x n tables, lexicographic in row-major order."""
    if n <= 0:
        return np.zeros((0, 0, 0), dtype=np.int32)
    cells = n * n
    t = [[-1] * n for _ in range(n)]
    start = 0
    if first_row is not None:
        for j, v in enumerate(first_row):
            t[0][j] = int(v)
        start = n
        if not _consistent(t, n, n - 1):
            return np.zeros((0, n, n), dtype=np.int32)
    out = []

    def rec(c):
        if c == cells:
            out.append([row[:] for row in t])
            return
        i, j = divmod(c, n)
        for v in range(n):
            t[i][j] = v
            if _consistent(t, n, c):
                rec(c + 1)
        t[i][j] = -1

    rec(start)
    if not out:
        return np.zeros((0, n, n), dtype=np.int32)
    return np.asarray(out, dtype=np.int32)


def green_matrices(table):
    """Boolean matrices ``L[a, b] = a <=_L b`` and ``R[a, b] = a <=_R b`` over S^1."""
    t = np.asarray(table)
    n = t.shape[0]
    L = np.eye(n, dtype=bool)
    R = np.eye(n, dtype=bool)
    cols = np.broadcast_to(np.arange(n)[None, :], (n, n))
    # x*b = a  =>  a <=_L b ;  b*x = a  =>  a <=_R b
    L[t, cols] = True
    R[t.T, cols] = True
    return L, R


def group_inverses(table, L, R):
    """``sharp[a]`` = group inverse of a, or -1."""
    t = np.asarray(table)
    n = t.shape[0]
    H = L & L.T & R & R.T
    sharp = np.full(n, -1, dtype=np.int32)
    for a in range(n):
        a2 = t[a, a]
        if not H[a, a2]:
            continue
        for x in np.flatnonzero(H[a]):
            if t[x, a] == t[a, x] and t[t[a, x], a] == a and t[t[x, a], x] == x:
                sharp[a] = x
                break
    return sharp


def pair_sweep(table, L, R, sharp):
    """Inverse-along data for every pair (a, d); all outputs indexed ``[a, d]``.

    cond bit k (k = 0..4) is condition k+1 of the existence theorem, with
    condition 1 decided by brute search over the defining identities.
    """
    t = np.asarray(table)
    n = t.shape[0]
    H = L & L.T & R & R.T
    leH = L & R
    C = t == t.T
    ar = np.arange(n)
    cond = np.zeros((n, n), dtype=np.uint8)
    def_count = np.zeros((n, n), dtype=np.int32)
    lemma_count = np.zeros((n, n), dtype=np.int32)
    b_def = np.full((n, n), -1, dtype=np.int32)
    b_lemma = np.full((n, n), -1, dtype=np.int32)
    formula_r = np.full((n, n), -1, dtype=np.int32)
    formula_l = np.full((n, n), -1, dtype=np.int32)
    bicomm_bad = np.zeros((n, n), dtype=np.int32)
    cor_bad = np.zeros((n, n), dtype=bool)
    BA = t.T  # BA[a, b] = b*a
    for d in range(n):
        # def: b*a*d == d == d*a*b and b <=_H d
        da = t[d]  # da[a] = d*a
        ad = t[:, d]  # ad[a] = a*d
        ok_def = (t[:, d][BA] == d) & (t[da] == d) & leH[:, d][None, :]
        def_count[:, d] = ok_def.sum(axis=1)
        has = def_count[:, d] > 0
        b_def[has, d] = ok_def[has].argmax(axis=1)
        # lemma: b*a*b == b and b H d
        ok_lem = (t[BA, ar[None, :]] == ar[None, :]) & H[:, d][None, :]
        lemma_count[:, d] = ok_lem.sum(axis=1)
        hl = lemma_count[:, d] > 0
        b_lemma[hl, d] = ok_lem[hl].argmax(axis=1)

        dad = t[da, d]
        c = has.astype(np.uint8)
        c |= (R[d, da] & (sharp[da] >= 0)).astype(np.uint8) << 1
        c |= (L[d, ad] & (sharp[ad] >= 0)).astype(np.uint8) << 2
        c |= H[dad, d].astype(np.uint8) << 3
        c |= (L[d, dad] & R[d, dad]).astype(np.uint8) << 4
        cond[:, d] = c

        sr = sharp[ad]
        formula_r[sr >= 0, d] = t[d, sr[sr >= 0]]
        sl = sharp[da]
        formula_l[sl >= 0, d] = t[sl[sl >= 0], d]

        bvec = b_def[:, d]
        rows = np.flatnonzero(bvec >= 0)
        if len(rows):
            comm = C[rows] & C[d][None, :] & ~C[bvec[rows]]
            bicomm_bad[rows, d] = comm.sum(axis=1)
            b = bvec[rows]
            commuting = ad[rows] == da[rows]
            bad = commuting & ((t[rows, b] != t[b, rows]) | (t[b, d] != t[d, b]))
            cor_bad[rows, d] = bad
    return {
        "cond": cond,
        "def_count": def_count,
        "lemma_count": lemma_count,
        "b_def": b_def,
        "b_lemma": b_lemma,
        "formula_r": formula_r,
        "formula_l": formula_l,
        "bicomm_bad": bicomm_bad,
        "cor_bad": cor_bad,
    }
