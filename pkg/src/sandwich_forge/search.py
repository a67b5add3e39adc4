"""Sandwich enumeration up to isomorphism, axiom-independence
counterexample search, and the group-subsandwich embedding probe."""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .caps import CapExceeded, get_cap
from .eqdsl import sandwich_laws, search_models
from .groups import FiniteGroup, catalog, catalog_is_complete, elementary_abelian_2, sandwich_of
from .magma import Magma, axiom_profile, canonicalize, is_closed, require_sandwich, right_zero
from .natmap import natural_map, propagate_images
from .tables import format_table_text

AXIOMS = ("LD", "II", "LI", "LS", "LC")


@dataclass
class SearchReport:
    query: str
    count: int = 0
    representatives: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    nodes_explored: int = 0
    elapsed: float = 0.0
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "query": self.query,
            "count": self.count,
            "representatives": [format_table_text(m.table) for m in self.representatives],
            "witnesses": self.witnesses,
            "nodes_explored": self.nodes_explored,
            "elapsed": round(self.elapsed, 6),
            "details": self.details,
        }


def isomorphism_classes(tables) -> list[Magma]:
    """Canonical representatives of the distinct classes, sorted."""
    seen = {}
    for t in tables:
        c = canonicalize(Magma(t))[0]
        seen.setdefault(c.table.tobytes(), c)
    return sorted(seen.values(), key=lambda m: m.tolist())


def involutions_fixing(n: int, a: int) -> list[tuple[int, ...]]:
    """Every involution of 0..n-1 that fixes ``a``."""
    out = []

    def rec(p, free):
        if not free:
            out.append(tuple(p))
            return
        x, rest = free[0], free[1:]
        p[x] = x
        rec(p, rest)
        for i, y in enumerate(rest):
            p[x], p[y] = y, x
            rec(p, rest[:i] + rest[i + 1:])
            p[y] = y
        p[x] = x

    rec(list(range(n)), [x for x in range(n) if x != a])
    return out


def first_row_forms(n: int) -> list[tuple[int, ...]]:
    """One involution fixing 0 per cycle type: (1 2)(3 4)... with k swaps.

    Every sandwich is isomorphic (by a relabeling fixing 0) to one whose
    row 0 is among these.
    """
    out = []
    for k in range((n - 1) // 2 + 1):
        p = list(range(n))
        for i in range(k):
            p[2 * i + 1], p[2 * i + 2] = 2 * i + 2, 2 * i + 1
        out.append(tuple(p))
    return out


def _row_candidates(n: int, row0):
    rows = [list(row0)]
    for a in range(1, n):
        rows.append(involutions_fixing(n, a))
    flat = [r for rs in rows for r in rs]
    count = np.array([len(rs) for rs in rows], dtype=np.int64)
    start = np.concatenate([[0], np.cumsum(count)[:-1]]).astype(np.int64)
    return np.array(flat, dtype=np.int64).reshape(-1, n), start, count


def _subtree(args):
    n, row0 = args
    cands, start, count = _row_candidates(n, [row0])
    capacity = 4096
    while True:
        found, buf, nodes = _kernels.enumerate_rows(n, cands, start, count, capacity)
        if found <= capacity:
            return buf[:found].copy(), int(nodes)
        capacity = found


def enumerate_sandwiches(n: int, mode: str = "pruned", jobs: int = 1, progress=None) -> SearchReport:
    """Isomorphism classes of sandwiches of order n.

    ``pruned`` fills whole rows (each an involution fixing its own index),
    fixes row 0 to one form per cycle type, forces rows via
    L(ab) = L(a) L(b) L(a), and rejects isomorphs by canonical form.
    ``oracle`` sweeps raw tables: all n^(n*n) of them for n <= 3, and at
    larger n every table whose diagonal is the identity (any other diagonal
    already violates idempotency).
    """
    t0 = time.perf_counter()
    if n < 1:
        raise ValueError("order must be positive")
    if mode == "oracle":
        cap = get_cap("oracle")
        if n > cap:
            raise CapExceeded(f"oracle enumeration supports order <= {cap}, got {n}")
        full = n <= 3
        capacity = 4096
        while True:
            found, buf = _kernels.sweep_sandwiches(n, full, capacity)
            if found <= capacity:
                break
            capacity = found
        reps = isomorphism_classes(buf[:found])
        nodes = n ** (n * n if full else n * n - n)
        details = {"labelled": int(found), "tables_swept": nodes, "diagonal_fixed": not full}
    elif mode == "pruned":
        cap = get_cap("enumerate")
        if n > cap:
            raise CapExceeded(f"pruned enumeration supports order <= {cap}, got {n}")
        tasks = [(n, r) for r in first_row_forms(n)]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_subtree, tasks))
        else:
            results = []
            for task in tasks:
                results.append(_subtree(task))
                if progress:
                    progress(sum(r[1] for r in results), sum(len(r[0]) for r in results))
        tables = [t for r in results for t in r[0]]
        nodes = sum(r[1] for r in results)
        reps = isomorphism_classes(tables)
        details = {"labelled": len(tables), "subtrees": len(tasks)}
    else:
        raise ValueError(f"mode must be 'pruned' or 'oracle', got {mode!r}")
    for m in reps:
        if not axiom_profile(m).is_sandwich:
            raise AssertionError(f"enumeration produced a non-sandwich {m}")
    return SearchReport(
        f"sandwiches of order {n} ({mode})",
        len(reps),
        reps,
        nodes_explored=int(nodes),
        elapsed=time.perf_counter() - t0,
        details=details,
    )


def _axiom_set(names) -> list[str]:
    out = []
    for a in names:
        a = a.upper()
        if a not in AXIOMS:
            raise ValueError(f"unknown axiom {a!r}; choose from {AXIOMS}")
        if a not in out:
            out.append(a)
    return out


def find_magma(required, forbidden, n_max: int, all_models: bool = False) -> SearchReport:
    """Smallest magma satisfying ``required`` and violating each of
    ``forbidden``, searching orders 1..n_max.

    The report records which lower orders were exhausted; with
    ``all_models`` every model at the smallest order is collected and
    reduced to isomorphism classes.
    """
    t0 = time.perf_counter()
    req, forb = _axiom_set(required), _axiom_set(forbidden)
    clash = set(req) & set(forb)
    if clash:
        raise ValueError(f"contradictory axiom sets: {sorted(clash)} both required and forbidden")
    laws = sandwich_laws()
    query = f"require {{{', '.join(req)}}} forbid {{{', '.join(forb)}}} up to order {n_max}"
    nodes = 0
    exhausted = []
    for n in range(1, n_max + 1):
        models, k = search_models(laws.select(req), laws.select(forb), n, limit=0 if all_models else 1)
        nodes += k
        if models:
            reps = isomorphism_classes([m.table for m in models])
            for m in reps:
                prof = axiom_profile(m)
                flags = {a: getattr(prof, a.lower()) for a in AXIOMS}
                if not all(flags[a] for a in req) or any(flags[a] for a in forb):
                    raise AssertionError(f"model {m} does not have the requested profile")
            return SearchReport(
                query,
                len(reps),
                reps,
                nodes_explored=nodes,
                elapsed=time.perf_counter() - t0,
                details={
                    "order": n,
                    "exhausted_orders": exhausted,
                    "minimal": exhausted == list(range(1, n)),
                    "all_models": all_models,
                },
            )
        exhausted.append(n)
    return SearchReport(
        query,
        0,
        nodes_explored=nodes,
        elapsed=time.perf_counter() - t0,
        details={"order": None, "exhausted_orders": exhausted, "note": f"none up to order {n_max}"},
    )


def find_embedding(s: Magma, g: FiniteGroup) -> list[int] | None:
    """An injective product-preserving map from ``s`` into the sandwich of ``g``.

    Element 0 is sent to the identity: left multiplication by a group
    element is an automorphism of the group sandwich, so this loses nothing.
    """
    m, N = s.order, g.order
    if m > N:
        return None
    dst = sandwich_of(g).table
    src = s.table
    p = [-1] * m
    used = [False] * N
    p[0] = g.identity
    used[g.identity] = True
    if not propagate_images(src, dst, p, used, [0]):
        return None

    def rec(p, used):
        try:
            x = p.index(-1)
        except ValueError:
            return p
        for y in range(N):
            if used[y]:
                continue
            q, u = list(p), list(used)
            q[x], u[y] = y, True
            if propagate_images(src, dst, q, u, [x]):
                hit = rec(q, u)
                if hit is not None:
                    return hit
        return None

    return rec(p, used)


def verify_embedding(s: Magma, g: FiniteGroup, mapping) -> bool:
    """Injective, image closed in the group sandwich, products transported cell for cell."""
    phi = np.asarray(mapping, dtype=np.int64)
    if len(set(phi.tolist())) != s.order:
        return False
    gs = sandwich_of(g)
    if not is_closed(gs, phi.tolist()):
        return False
    return bool((phi[s.table] == gs.table[np.ix_(phi, phi)]).all())


def embed_in_group_sandwich(
    s: Magma,
    max_group_order: int = 16,
    groups=None,
    full_carrier: bool = False,
) -> SearchReport:
    """Look for ``s`` inside the sandwich of a catalog group.

    Groups are tried by increasing order.  ``full_carrier`` restricts to
    groups of order exactly |s|.  "Not found" only speaks for the groups
    listed in the report.
    """
    t0 = time.perf_counter()
    require_sandwich(s)
    if groups is None:
        groups = [e.group for e in catalog(max_group_order)]
    if full_carrier:
        groups = [g for g in groups if g.order == s.order]
    tried = []
    for g in groups:
        if g.order < s.order:
            continue
        tried.append(g.name)
        phi = find_embedding(s, g)
        if phi is not None:
            if not verify_embedding(s, g, phi):
                raise AssertionError(f"embedding into {g.name} failed verification")
            w = {"group": g.name, "group_order": g.order, "subset": sorted(phi), "mapping": list(phi)}
            return SearchReport(
                f"embed order-{s.order} sandwich",
                1,
                [s],
                [w],
                elapsed=time.perf_counter() - t0,
                details={"groups_tried": tried, "unresolved": False},
            )
    details = {
        "groups_tried": tried,
        "unresolved": True,
        "catalog_complete": catalog_is_complete(max_group_order),
        "note": "not found within the searched groups; this does not show non-embeddability",
    }
    # a -> L_a is a sandwich homomorphism into Sym(n); when injective it is
    # an embedding, even though Sym(n) itself may lie outside the catalog
    if natural_map(s).injective:
        details["unresolved"] = False
        details["natural_map_injective"] = True
        details["note"] = f"embeds in the sandwich of Sym({s.order}) via a -> L_a"
    return SearchReport(f"embed order-{s.order} sandwich", 0, [s], elapsed=time.perf_counter() - t0, details=details)


def embedding_census(n: int, max_group_order: int = 16) -> SearchReport:
    """Run the embedding probe on every sandwich of order n."""
    t0 = time.perf_counter()
    reps = enumerate_sandwiches(n).representatives
    witnesses = []
    via_translations = []
    unresolved = []
    for i, s in enumerate(reps):
        r = embed_in_group_sandwich(s, max_group_order)
        if r.witnesses:
            witnesses.append({"index": i, **r.witnesses[0]})
        elif r.details.get("natural_map_injective"):
            via_translations.append(i)
        else:
            unresolved.append(i)
    return SearchReport(
        f"embedding census, order {n}, groups up to order {max_group_order}",
        len(reps),
        reps,
        witnesses,
        elapsed=time.perf_counter() - t0,
        details={
            "unresolved": unresolved,
            "embedded_via_left_translations": via_translations,
            "catalog": [e.name for e in catalog(max_group_order)],
        },
    )


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def right_zero_checks(n: int, cap: int = 8) -> dict:
    """Group-sandwich and group-subsandwich status of the right zero sandwich of order n.

    Up to ``cap`` (at most the complete-catalog bound) both answers are
    re-derived: every group of order n is tested, and a subset of C2^k
    with 2^k >= n is exhibited.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rz = right_zero(n)
    out = {"n": n, "is_group_sandwich": _is_power_of_two(n), "is_group_subsandwich": True, "verified": False}
    if _is_power_of_two(n):
        out["group_witness"] = elementary_abelian_2(n.bit_length() - 1).name
    k = max(0, math.ceil(math.log2(n)))
    host = elementary_abelian_2(k)
    subset = list(range(n))
    out["subsandwich_witness"] = {"group": host.name, "subset": subset}
    if n <= min(cap, 8) and catalog_is_complete(n):
        hits = [e.name for e in catalog(n) if e.group.order == n and sandwich_of(e.group) == rz]
        sub_ok = verify_embedding(rz, host, subset)
        out["groups_checked"] = [e.name for e in catalog(n) if e.group.order == n]
        out["groups_giving_right_zero"] = hits
        out["verified"] = bool(hits) == out["is_group_sandwich"] and sub_ok
    return out
