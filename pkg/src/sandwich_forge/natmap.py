"""The natural map a -> L_a of a sandwich into its automorphism group,
the image sandwich of involutions, and the congruence classes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .caps import CapExceeded, get_cap
from .groups import FiniteGroup, central_involutions, left_cosets, sandwich_of
from .magma import Magma, axiom_profile, require_sandwich


def compose(p, q) -> tuple[int, ...]:
    """(p.q)(x) = p(q(x))."""
    return tuple(p[x] for x in q)


def invert(p) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def propagate_images(src: np.ndarray, dst: np.ndarray, p: list, used: list, fresh: list) -> bool:
    """Close a partial injective map under p(ab) = p(a)p(b), where ``ab``
    is read in ``src`` and the right side in ``dst``; False on conflict.

    Only pairs involving a newly mapped element are examined.
    """
    queue = list(fresh)
    done = [x for x in range(len(p)) if p[x] >= 0 and x not in fresh]
    while queue:
        x = queue.pop()
        done.append(x)
        for y in done:
            for a, b in ((x, y), (y, x)):
                c = int(src[a, b])
                img = int(dst[p[a], p[b]])
                if p[c] < 0:
                    if used[img]:
                        return False
                    p[c] = img
                    used[img] = True
                    queue.append(c)
                elif p[c] != img:
                    return False
    return True


def sandwich_automorphisms(s: Magma, cap: int | None = None) -> list[tuple[int, ...]]:
    """All bijections p with p(ab) = p(a)p(b), sorted.

    Backtracking over images in element order; each choice is closed
    under the forced images before branching again.
    """
    require_sandwich(s)
    cap = get_cap("automorphisms") if cap is None else cap
    n = s.order
    if n > cap:
        raise CapExceeded(f"automorphism search supports order <= {cap}, got {n}")
    T = s.table
    out = []

    def rec(p, used):
        try:
            x = p.index(-1)
        except ValueError:
            out.append(tuple(p))
            return
        for y in range(n):
            if used[y]:
                continue
            q, u = list(p), list(used)
            q[x], u[y] = y, True
            if propagate_images(T, T, q, u, [x]):
                rec(q, u)

    rec([-1] * n, [False] * n)
    out.sort()
    if not is_permutation_group(out):
        raise AssertionError("automorphisms are not closed under composition")
    return out


def is_permutation_group(perms) -> bool:
    """Closure under composition and inverses, via a greedy generating set."""
    elems = set(perms)
    if not elems:
        return False
    n = len(next(iter(elems)))
    ident = tuple(range(n))
    if ident not in elems or any(invert(p) not in elems for p in elems):
        return False
    gens: list = []
    span = {ident}
    for p in sorted(elems):
        if p in span:
            continue
        gens.append(p)
        frontier = list(span)
        while frontier:
            nxt = []
            for q in frontier:
                for g in gens:
                    r = compose(q, g)
                    if r not in span:
                        if r not in elems:
                            return False
                        span.add(r)
                        nxt.append(r)
            frontier = nxt
    return span == elems


@dataclass(frozen=True)
class NaturalMapResult:
    source: Magma
    images: tuple[tuple[int, ...], ...]       # L_a for each element a
    distinct: tuple[tuple[int, ...], ...]     # image carrier, first-occurrence order
    image_magma: Magma
    classes: tuple[tuple[int, ...], ...]
    eq2_verified: bool

    @property
    def injective(self) -> bool:
        return len(self.distinct) == self.source.order

    @property
    def image_order(self) -> int:
        return len(self.distinct)

    def to_json(self) -> dict:
        return {
            "classes": [list(c) for c in self.classes],
            "image_order": self.image_order,
            "eq2_verified": self.eq2_verified,
            "injective": self.injective,
        }


def sandwich_product(p, q) -> tuple[int, ...]:
    """P Q^-1 P for permutations."""
    return compose(compose(p, invert(q)), p)


def natural_map(s: Magma) -> NaturalMapResult:
    """Send each element to its left translation and check the structure.

    Verified on the way: L(ab) = L(a) L(b)^-1 L(a) for all a, b; every L_a
    is an involutive automorphism (and lies in the automorphism list when
    that is within the cap); every class is right zero; the image is a
    sandwich of involutions.
    """
    require_sandwich(s)
    T = s.table
    n = s.order
    L = tuple(tuple(int(x) for x in T[a]) for a in range(n))
    ident = tuple(range(n))

    eq2 = all(L[int(T[a, b])] == sandwich_product(L[a], L[b]) for a in range(n) for b in range(n))
    for a in range(n):
        if compose(L[a], L[a]) != ident:
            raise AssertionError(f"L_{a} is not an involution")
        if not (T[np.ix_(L[a], L[a])] == np.array(L[a])[T]).all():
            raise AssertionError(f"L_{a} is not an automorphism")
    if n <= get_cap("automorphisms"):
        auts = set(sandwich_automorphisms(s))
        if not all(p in auts for p in L):
            raise AssertionError("a left translation is missing from the automorphism group")

    distinct: list = []
    for p in L:
        if p not in distinct:
            distinct.append(p)
    pos = {p: i for i, p in enumerate(distinct)}
    image = Magma([[pos[sandwich_product(p, q)] for q in distinct] for p in distinct])
    classes = tuple(tuple(a for a in range(n) if L[a] == p) for p in distinct)

    for cls in classes:
        if not all(T[a, b] == b for a in cls for b in cls):
            raise AssertionError(f"class {cls} is not right zero")
    if not axiom_profile(image).is_sandwich:
        raise AssertionError("image of the natural map is not a sandwich")
    return NaturalMapResult(s, L, tuple(distinct), image, classes, eq2)


@dataclass(frozen=True)
class CosetCheck:
    group: str
    central_involutions: frozenset
    classes: tuple[frozenset, ...]
    cosets: tuple[frozenset, ...]

    @property
    def match(self) -> bool:
        return set(self.classes) == set(self.cosets)

    @property
    def injective(self) -> bool:
        return all(len(c) == 1 for c in self.classes)


def group_congruence_cosets(g: FiniteGroup) -> CosetCheck:
    """Compare the natural-map classes of a group sandwich with the cosets
    of its central involutions."""
    e = central_involutions(g)
    res = natural_map(sandwich_of(g))
    return CosetCheck(
        g.name,
        e,
        tuple(frozenset(c) for c in res.classes),
        tuple(left_cosets(g, e)),
    )
