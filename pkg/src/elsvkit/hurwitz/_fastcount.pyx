# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel for exhaustive transposition-tuple tallies.

Enumerates all length-b tuples of transpositions in S_d (optionally with
weakly increasing largest moved points, the monotone condition), keeps a
running product and a union-find of visited sheets, and tallies the cycle
type of the closing permutation. The pure-Python twin lives in
_purecount.py; both must return identical tables.
"""


def kernel_id():
    return "compiled"


cdef int _find(int *parent, int x):
    while parent[x] != x:
        x = parent[x]
    return x


cdef void _dfs(int level, int b, int d, int nt, int start,
               int *tra, int *trc, int *cstart,
               int *P, int *Pinv, int *siginv,
               int *parent, int *size, int ncomp,
               bint monotone,
               int npart, int *plen, int *pflat,
               long *tally_all, long *tally_conn):
    cdef int j, a, c, pa, pc, ra, rc, undo_child, undo_parent
    cdef int x, y, cnt, nl, i, k, pi, ok
    cdef int lens[17]
    cdef bint seen[17]
    if level == b:
        # closing permutation sigma0 = Pinv o siginv; tally its cycle type
        for x in range(d):
            seen[x] = 0
        nl = 0
        for x in range(d):
            if seen[x]:
                continue
            cnt = 0
            y = x
            while not seen[y]:
                seen[y] = 1
                cnt += 1
                y = Pinv[siginv[y]]
            # insert cnt into lens, descending
            i = nl
            while i > 0 and lens[i - 1] < cnt:
                lens[i] = lens[i - 1]
                i -= 1
            lens[i] = cnt
            nl += 1
        for pi in range(npart):
            if plen[pi] != nl:
                continue
            ok = 1
            for k in range(nl):
                if pflat[pi * 16 + k] != lens[k]:
                    ok = 0
                    break
            if ok:
                tally_all[pi] += 1
                if ncomp == 1:
                    tally_conn[pi] += 1
                break
        return
    for j in range(start, nt):
        a = tra[j]
        c = trc[j]
        # left-multiply running product by (a c): swap the values a and c
        pa = Pinv[a]
        pc = Pinv[c]
        P[pa] = c
        P[pc] = a
        Pinv[a] = pc
        Pinv[c] = pa
        # union the two sheets, with rollback bookkeeping
        ra = _find(parent, a)
        rc = _find(parent, c)
        undo_child = -1
        undo_parent = -1
        if ra != rc:
            if size[ra] < size[rc]:
                ra, rc = rc, ra
            parent[rc] = ra
            size[ra] += size[rc]
            undo_child = rc
            undo_parent = ra
        _dfs(level + 1, b, d, nt, cstart[c] if monotone else 0,
             tra, trc, cstart, P, Pinv, siginv, parent, size,
             ncomp - (1 if undo_child >= 0 else 0), monotone,
             npart, plen, pflat, tally_all, tally_conn)
        if undo_child >= 0:
            size[undo_parent] -= size[undo_child]
            parent[undo_child] = undo_child
        # roll back the product
        P[pa] = a
        P[pc] = c
        Pinv[a] = pa
        Pinv[c] = pc


def count_types(int d, int b, sigma_inf, bint monotone, parts):
    """Tally closing cycle types over all transposition tuples.

    sigma_inf: length-d tuple of 0-based images (the fixed extra factor).
    parts: list of cycle types (tuples sorted descending) to tally into.
    Returns (all_counts, connected_counts) as lists of ints aligned with
    parts. Connected means the group generated by the transpositions and
    sigma_inf acts transitively on the d sheets.
    """
    if d < 1 or d > 16 or b < 0 or b > 16:
        raise ValueError("kernel supports 1 <= d <= 16, 0 <= b <= 16")
    cdef int nt = d * (d - 1) // 2
    cdef int tra[120]
    cdef int trc[120]
    cdef int cstart[17]
    cdef int P[17]
    cdef int Pinv[17]
    cdef int siginv[17]
    cdef int parent[17]
    cdef int size[17]
    cdef int plen[64]
    cdef int pflat[1024]
    cdef long tally_all[64]
    cdef long tally_conn[64]
    cdef int i, j, k, ncomp, x, y

    npart = len(parts)
    if npart > 64:
        raise ValueError("too many cycle types")
    for i in range(npart):
        p = parts[i]
        if len(p) > 16:
            raise ValueError("cycle type too long")
        plen[i] = len(p)
        for k in range(len(p)):
            pflat[i * 16 + k] = p[k]

    k = 0
    for c in range(1, d):
        cstart[c] = k
        for a in range(c):
            tra[k] = a
            trc[k] = c
            k += 1
    cstart[0] = 0

    for i in range(d):
        P[i] = i
        Pinv[i] = i
        parent[i] = i
        size[i] = 1

    sig = list(sigma_inf)
    if sorted(sig) != list(range(d)):
        raise ValueError("sigma_inf must be a permutation of 0..d-1")
    inv = [0] * d
    for i in range(d):
        inv[sig[i]] = i
    for i in range(d):
        siginv[i] = inv[i]

    # union along sigma_inf cycles before the search
    ncomp = d
    for i in range(d):
        j = sig[i]
        x = _find(parent, i)
        y = _find(parent, j)
        if x != y:
            if size[x] < size[y]:
                x, y = y, x
            parent[y] = x
            size[x] += size[y]
            ncomp -= 1

    for i in range(npart):
        tally_all[i] = 0
        tally_conn[i] = 0

    _dfs(0, b, d, nt, 0, tra, trc, cstart, P, Pinv, siginv,
         parent, size, ncomp, monotone, npart, plen, pflat,
         tally_all, tally_conn)

    return ([tally_all[i] for i in range(npart)],
            [tally_conn[i] for i in range(npart)])
