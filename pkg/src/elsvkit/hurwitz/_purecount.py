"""Pure-Python twin of the compiled tuple-tally kernel.

Same contract as _fastcount.count_types; used when the extension is not
built. Keep the two in lockstep.
"""

from __future__ import annotations


def kernel_id():
    return "pure"


def count_types(d, b, sigma_inf, monotone, parts):
    if d < 1 or d > 16 or b < 0 or b > 16:
        raise ValueError("kernel supports 1 <= d <= 16, 0 <= b <= 16")
    sig = list(sigma_inf)
    if sorted(sig) != list(range(d)):
        raise ValueError("sigma_inf must be a permutation of 0..d-1")
    siginv = [0] * d
    for i, v in enumerate(sig):
        siginv[v] = i

    trans = [(a, c) for c in range(1, d) for a in range(c)]
    nt = len(trans)
    cstart = [0] * d
    k = 0
    for c in range(1, d):
        cstart[c] = k
        k += c

    P = list(range(d))
    Pinv = list(range(d))
    parent = list(range(d))
    size = [1] * d

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    ncomp = d
    for i in range(d):
        x, y = find(i), find(sig[i])
        if x != y:
            if size[x] < size[y]:
                x, y = y, x
            parent[y] = x
            size[x] += size[y]
            ncomp -= 1

    index = {p: i for i, p in enumerate(parts)}
    tally_all = [0] * len(parts)
    tally_conn = [0] * len(parts)

    def leaf(ncomp):
        seen = [False] * d
        lens = []
        for x in range(d):
            if seen[x]:
                continue
            cnt = 0
            y = x
            while not seen[y]:
                seen[y] = True
                cnt += 1
                y = Pinv[siginv[y]]
            lens.append(cnt)
        lens.sort(reverse=True)
        pi = index.get(tuple(lens))
        if pi is not None:
            tally_all[pi] += 1
            if ncomp == 1:
                tally_conn[pi] += 1

    def dfs(level, start, ncomp):
        if level == b:
            leaf(ncomp)
            return
        for j in range(start, nt):
            a, c = trans[j]
            pa, pc = Pinv[a], Pinv[c]
            P[pa], P[pc] = c, a
            Pinv[a], Pinv[c] = pc, pa
            ra, rc = find(a), find(c)
            merged = ra != rc
            if merged:
                if size[ra] < size[rc]:
                    ra, rc = rc, ra
                parent[rc] = ra
                size[ra] += size[rc]
            dfs(level + 1, cstart[c] if monotone else 0, ncomp - merged)
            if merged:
                size[ra] -= size[rc]
                parent[rc] = rc
            P[pa], P[pc] = a, c
            Pinv[a], Pinv[c] = pa, pc

    dfs(0, 0, ncomp)
    return tally_all, tally_conn
