"""numba-compiled inner loops. Each function mirrors one in ``_numpy``."""

import numpy as np
from numba import njit


@njit(cache=True)
def canonical_index(table, fwd, inv):
    n = table.shape[0]
    best = np.empty(n * n, np.int64)
    p = fwd[0]
    q = inv[0]
    for i in range(n):
        for j in range(n):
            best[i * n + j] = p[table[q[i], q[j]]]
    best_k = 0
    for k in range(1, fwd.shape[0]):
        p = fwd[k]
        q = inv[k]
        state = 0  # 0 tied so far, 1 strictly smaller, 2 larger
        for i in range(n):
            qi = q[i]
            for j in range(n):
                v = p[table[qi, q[j]]]
                c = i * n + j
                if state == 0:
                    if v > best[c]:
                        state = 2
                        break
                    if v < best[c]:
                        state = 1
                        best_k = k
                if state == 1:
                    best[c] = v
            if state == 2:
                break
    return best_k


@njit(cache=True)
def _full_sandwich(T, n):
    for a in range(n):
        if T[a, a] != a:
            return False
    for a in range(n):
        for b in range(n):
            if T[a, T[a, b]] != b:
                return False
    for a in range(n):
        for b in range(n):
            if T[a, b] == b and T[b, a] != a:
                return False
    for a in range(n):
        for b in range(n):
            ab = T[a, b]
            for c in range(n):
                if T[ab, T[a, c]] != T[a, T[b, c]]:
                    return False
    return True


@njit(cache=True)
def sweep_sandwiches(n, full, capacity):
    if full:
        ncells = n * n
    else:
        ncells = n * n - n
    cells = np.empty(ncells, np.int64)
    k = 0
    for c in range(n * n):
        if full or c // n != c % n:
            cells[k] = c
            k += 1
    T = np.zeros((n, n), np.int64)
    for a in range(n):
        T[a, a] = a
    for k in range(ncells):
        T[cells[k] // n, cells[k] % n] = 0
    digits = np.zeros(ncells, np.int64)
    buf = np.empty((capacity, n, n), np.int64)
    found = 0
    while True:
        if _full_sandwich(T, n):
            if found < capacity:
                buf[found] = T
            found += 1
        k = 0
        while k < ncells:
            c = cells[k]
            digits[k] += 1
            if digits[k] < n:
                T[c // n, c % n] = digits[k]
                break
            digits[k] = 0
            T[c // n, c % n] = 0
            k += 1
        if k == ncells:
            break
    return found, buf


@njit(cache=True)
def _forced_row(T, level, n, out):
    for x in range(level):
        for y in range(level):
            if T[x, y] == level:
                for t in range(n):
                    out[t] = T[x, T[y, T[x, t]]]
                return True
    return False


@njit(cache=True)
def _rows_consistent(T, a, n):
    for x in range(a + 1):
        for y in range(a + 1):
            z = T[x, y]
            if x != a and y != a and z != a:
                continue
            if (x == a or y == a) and z == y and T[y, x] != x:
                return False
            if z <= a:
                for t in range(n):
                    if T[z, t] != T[x, T[y, T[x, t]]]:
                        return False
    return True


@njit(cache=True)
def enumerate_rows(n, cands, start, count, capacity):
    T = np.full((n, n), -1, np.int64)
    idx = np.zeros(n, np.int64)
    forced = np.zeros(n, np.bool_)
    frow = np.empty((n, n), np.int64)
    buf = np.empty((capacity, n, n), np.int64)
    nodes = 0
    found = 0
    level = 0
    enter = True
    while level >= 0:
        if enter:
            forced[level] = _forced_row(T, level, n, frow[level])
            idx[level] = 0
            enter = False
        lim = 1 if forced[level] else count[level]
        if idx[level] >= lim:
            for t in range(n):
                T[level, t] = -1
            level -= 1
            continue
        if forced[level]:
            for t in range(n):
                T[level, t] = frow[level, t]
        else:
            row = cands[start[level] + idx[level]]
            for t in range(n):
                T[level, t] = row[t]
        idx[level] += 1
        nodes += 1
        if _rows_consistent(T, level, n):
            if level == n - 1:
                if found < capacity:
                    buf[found] = T
                found += 1
            else:
                level += 1
                enter = True
    return found, buf, nodes


@njit(cache=True)
def _eval(T, code, s, ln, assign, stack):
    sp = 0
    for k in range(s, s + ln):
        op = code[k]
        if op >= 0:
            stack[sp] = assign[op]
            sp += 1
        else:
            r = stack[sp - 1]
            left = stack[sp - 2]
            sp -= 2
            if r < 0 or left < 0:
                stack[sp] = -1
            else:
                stack[sp] = T[left, r]
            sp += 1
    return stack[0]


@njit(cache=True)
def _violated(T, n, code, row, assign, stack):
    kind = row[0]
    nv = row[1]
    for v in range(nv):
        assign[v] = 0
    while True:
        if kind == 0:
            lhs = _eval(T, code, row[3], row[4], assign, stack)
            if lhs >= 0:
                rhs = _eval(T, code, row[5], row[6], assign, stack)
                if rhs >= 0 and lhs != rhs:
                    return True
        else:
            h1 = _eval(T, code, row[3], row[4], assign, stack)
            if h1 >= 0:
                h2 = _eval(T, code, row[5], row[6], assign, stack)
                if h2 == h1:
                    c1 = _eval(T, code, row[7], row[8], assign, stack)
                    if c1 >= 0:
                        c2 = _eval(T, code, row[9], row[10], assign, stack)
                        if c2 >= 0 and c1 != c2:
                            return True
        k = 0
        while k < nv:
            assign[k] += 1
            if assign[k] < n:
                break
            assign[k] = 0
            k += 1
        if k == nv:
            return False


@njit(cache=True)
def model_search(init, code, meta, limit, capacity):
    n = init.shape[0]
    T = init.copy()
    free = np.empty(n * n, np.int64)
    nfree = 0
    for c in range(n * n):
        if init[c // n, c % n] < 0:
            free[nfree] = c
            nfree += 1
    assign = np.zeros(32, np.int64)
    stack = np.zeros(256, np.int64)
    buf = np.empty((capacity, n, n), np.int64)
    nodes = 0
    found = 0
    nlaws = meta.shape[0]

    # preset cells may already refute a required law
    for li in range(nlaws):
        if meta[li, 2] == 0 and _violated(T, n, code, meta[li], assign, stack):
            return found, buf, nodes

    level = 0
    while level >= 0:
        if level == nfree:
            ok = True
            for li in range(nlaws):
                if meta[li, 2] == 1 and not _violated(T, n, code, meta[li], assign, stack):
                    ok = False
                    break
            if ok:
                if found < capacity:
                    buf[found] = T
                found += 1
                if limit > 0 and found >= limit:
                    return found, buf, nodes
            level -= 1
            continue
        c = free[level]
        i = c // n
        j = c % n
        v = T[i, j] + 1
        advanced = False
        while v < n:
            T[i, j] = v
            nodes += 1
            good = True
            for li in range(nlaws):
                if meta[li, 2] == 0 and _violated(T, n, code, meta[li], assign, stack):
                    good = False
                    break
            if good:
                advanced = True
                break
            v += 1
        if advanced:
            level += 1
        else:
            T[i, j] = -1
            level -= 1
    return found, buf, nodes


@njit(cache=True)
def classify_batch(values, gtab, ginv, htab, hinv):
    """Per function: strongly inverse preserving, sandwich morphism,
    the rearranged conjugate identity, and its as-printed variant."""
    nf, n = values.shape
    sip = np.ones(nf, np.bool_)
    sm = np.ones(nf, np.bool_)
    eq1 = np.ones(nf, np.bool_)
    eq1_printed = np.ones(nf, np.bool_)
    for k in range(nf):
        f = values[k]
        for a in range(n):
            fa = f[a]
            fai = hinv[fa]
            for x in range(n):
                fax = f[gtab[a, x]]
                faxi = f[gtab[a, ginv[x]]]
                # f^a(x^-1) against (f^a(x))^-1
                if sip[k] and htab[fai, faxi] != hinv[htab[fai, fax]]:
                    sip[k] = False
                lhs = htab[htab[fax, fai], faxi]
                if eq1[k] and lhs != fa:
                    eq1[k] = False
                if eq1_printed[k] and lhs != htab[htab[fa, hinv[faxi]], fa]:
                    eq1_printed[k] = False
                # x doubles as b in f(a b^-1 a) = f(a) f(b)^-1 f(a)
                if sm[k] and f[gtab[gtab[a, ginv[x]], a]] != htab[htab[fa, hinv[f[x]]], fa]:
                    sm[k] = False
    return sip, sm, eq1, eq1_printed
