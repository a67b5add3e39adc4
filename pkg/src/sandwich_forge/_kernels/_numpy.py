"""Pure numpy counterparts of the ``_numba`` kernels.

Same signatures and results; loops that cannot be vectorized stay in
Python but push their per-node work into array operations.
"""

import numpy as np

CHUNK = 1 << 18


def canonical_index(table, fwd, inv):
    n = table.shape[0]
    rows = np.repeat(np.arange(n), n)
    cols = np.tile(np.arange(n), n)
    relabeled = np.take_along_axis(fwd, table[inv[:, rows], inv[:, cols]], axis=1)
    cand = np.arange(fwd.shape[0])
    for c in range(n * n):
        col = relabeled[cand, c]
        cand = cand[col == col.min()]
        if cand.size == 1:
            break
    return int(cand[0])


def _sandwich_mask(T):
    """Boolean mask over a (k, n, n) stack of tables."""
    k, n, _ = T.shape
    r = np.arange(k)[:, None, None]
    a = np.arange(n)[None, :, None]
    b = np.arange(n)[None, None, :]
    ok = (T[:, np.arange(n), np.arange(n)] == np.arange(n)).all(axis=1)
    ok &= (T[r, a, T] == b).all(axis=(1, 2))
    Tt = T.transpose(0, 2, 1)
    ok &= (~((T == b) & (Tt != a))).all(axis=(1, 2))
    idx = np.flatnonzero(ok)
    if idx.size:
        S = T[idx]
        r = np.arange(idx.size)[:, None, None, None]
        lhs = S[r, S[:, :, :, None], S[:, :, None, :]]
        rhs = S[r, np.arange(n)[None, :, None, None], S[:, None, :, :]]
        ok[idx] = (lhs == rhs).all(axis=(1, 2, 3))
    return ok


def sweep_sandwiches(n, full, capacity):
    cells = [c for c in range(n * n) if full or c // n != c % n]
    ncells = len(cells)
    total = n**ncells
    base = np.zeros((n, n), np.int64)
    base[np.arange(n), np.arange(n)] = np.arange(n)
    weights = n ** np.arange(ncells, dtype=np.int64)
    hits = []
    for lo in range(0, total, CHUNK):
        codes = np.arange(lo, min(lo + CHUNK, total), dtype=np.int64)
        digits = (codes[:, None] // weights[None, :]) % n
        T = np.broadcast_to(base, (codes.size, n, n)).copy()
        for k, c in enumerate(cells):
            T[:, c // n, c % n] = digits[:, k]
        hits.append(T[_sandwich_mask(T)])
    found = np.concatenate(hits) if hits else np.empty((0, n, n), np.int64)
    buf = np.empty((capacity, n, n), np.int64)
    m = min(capacity, len(found))
    buf[:m] = found[:m]
    return len(found), buf


def _rows_consistent(T, a):
    for x in range(a + 1):
        for y in range(a + 1):
            z = T[x, y]
            if x != a and y != a and z != a:
                continue
            if (x == a or y == a) and z == y and T[y, x] != x:
                return False
            if z <= a and not np.array_equal(T[z], T[x][T[y][T[x]]]):
                return False
    return True


def enumerate_rows(n, cands, start, count, capacity):
    T = np.full((n, n), -1, np.int64)
    out = []
    nodes = 0

    def rec(level):
        nonlocal nodes
        forced = None
        for x in range(level):
            for y in range(level):
                if T[x, y] == level:
                    forced = T[x][T[y][T[x]]]
                    break
            if forced is not None:
                break
        options = [forced] if forced is not None else cands[start[level]:start[level] + count[level]]
        for row in options:
            T[level] = row
            nodes += 1
            if _rows_consistent(T, level):
                if level == n - 1:
                    out.append(T.copy())
                else:
                    rec(level + 1)
        T[level] = -1

    rec(0)
    buf = np.empty((capacity, n, n), np.int64)
    m = min(capacity, len(out))
    if m:
        buf[:m] = np.array(out[:m])
    return len(out), buf, nodes


def _eval(T, code, s, ln, grids):
    stack = []
    for op in code[s:s + ln]:
        if op >= 0:
            stack.append(grids[op])
        else:
            r = stack.pop()
            left = stack.pop()
            known = (r >= 0) & (left >= 0)
            stack.append(np.where(known, T[np.maximum(left, 0), np.maximum(r, 0)], -1))
    return stack[0]


def _violated(T, n, code, row):
    nv = int(row[1])
    grids = [g.ravel() for g in np.indices((n,) * nv)] if nv else []
    if row[0] == 0:
        lhs = _eval(T, code, row[3], row[4], grids)
        rhs = _eval(T, code, row[5], row[6], grids)
        return bool(((lhs >= 0) & (rhs >= 0) & (lhs != rhs)).any())
    h1 = _eval(T, code, row[3], row[4], grids)
    h2 = _eval(T, code, row[5], row[6], grids)
    c1 = _eval(T, code, row[7], row[8], grids)
    c2 = _eval(T, code, row[9], row[10], grids)
    return bool(((h1 >= 0) & (h1 == h2) & (c1 >= 0) & (c2 >= 0) & (c1 != c2)).any())


def model_search(init, code, meta, limit, capacity):
    n = init.shape[0]
    T = init.copy()
    free = [c for c in range(n * n) if init[c // n, c % n] < 0]
    required = [row for row in meta if row[2] == 0]
    forbidden = [row for row in meta if row[2] == 1]
    out = []
    nodes = 0
    if any(_violated(T, n, code, row) for row in required):
        return 0, np.empty((capacity, n, n), np.int64), 0

    def rec(level):
        nonlocal nodes
        if level == len(free):
            if all(_violated(T, n, code, row) for row in forbidden):
                out.append(T.copy())
            return limit > 0 and len(out) >= limit
        i, j = divmod(free[level], n)
        for v in range(n):
            T[i, j] = v
            nodes += 1
            if any(_violated(T, n, code, row) for row in required):
                continue
            if rec(level + 1):
                return True
        T[i, j] = -1
        return False

    rec(0)
    buf = np.empty((capacity, n, n), np.int64)
    m = min(capacity, len(out))
    if m:
        buf[:m] = np.array(out[:m])
    return len(out), buf, nodes


def classify_batch(values, gtab, ginv, htab, hinv):
    nf, n = values.shape
    a = np.arange(n)[:, None]
    x = np.arange(n)[None, :]
    f = values[:, :, None]                      # f(a), broadcast over x
    fa = np.broadcast_to(f, (nf, n, n))
    fai = hinv[fa]
    fax = values[:, gtab[a, x]]
    faxi = values[:, gtab[a, ginv[x]]]
    sip = (htab[fai, faxi] == hinv[htab[fai, fax]]).all(axis=(1, 2))
    lhs = htab[htab[fax, fai], faxi]
    eq1 = (lhs == fa).all(axis=(1, 2))
    eq1_printed = (lhs == htab[htab[fa, hinv[faxi]], fa]).all(axis=(1, 2))
    fb = np.broadcast_to(values[:, None, :], (nf, n, n))
    sm = (values[:, gtab[gtab[a, ginv[x]], a]] == htab[htab[fa, hinv[fb]], fa]).all(axis=(1, 2))
    return sip, sm, eq1, eq1_printed
