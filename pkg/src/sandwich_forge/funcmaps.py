"""Arbitrary functions between finite groups, the left and right
conjugation actions on them, and the inverse-preservation hierarchy."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .caps import CapExceeded, get_cap
from .groups import FiniteGroup


@dataclass(frozen=True, eq=False)
class GroupFunction:
    domain: FiniteGroup
    codomain: FiniteGroup
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=np.int64)
        if v.shape != (self.domain.order,):
            raise ValueError(f"need one value per domain element ({self.domain.order}), got shape {v.shape}")
        if ((v < 0) | (v >= self.codomain.order)).any():
            raise ValueError(f"values must lie in 0..{self.codomain.order - 1}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __call__(self, x: int) -> int:
        return int(self.values[x])

    def __eq__(self, other):
        if not isinstance(other, GroupFunction):
            return NotImplemented
        return (
            self.domain is other.domain
            and self.codomain is other.codomain
            and np.array_equal(self.values, other.values)
        )

    def __hash__(self):
        return hash(self.values.tobytes())

    def __repr__(self):
        return f"GroupFunction({self.domain.name}->{self.codomain.name}, {self.values.tolist()})"


def inverse_map(g: FiniteGroup) -> GroupFunction:
    """x -> x^-1."""
    return GroupFunction(g, g, g.inverse)


def identity_map(g: FiniteGroup) -> GroupFunction:
    return GroupFunction(g, g, np.arange(g.order))


def left_multiplication(g: FiniteGroup, a: int) -> GroupFunction:
    return GroupFunction(g, g, g.table[a])


def conjugate(f: GroupFunction, a: int, side: str = "left") -> GroupFunction:
    """Left: x -> f(a)^-1 f(ax).  Right: x -> f(x a^-1) f(a^-1)^-1."""
    G, H = f.domain, f.codomain
    if not 0 <= a < G.order:
        raise ValueError(f"{a} is not an element of the domain {G.name}")
    v = f.values
    if side == "left":
        new = H.table[H.inverse[v[a]], v[G.table[a]]]
    elif side == "right":
        ai = G.inverse[a]
        new = H.table[v[G.table[:, ai]], H.inverse[v[ai]]]
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return GroupFunction(G, H, new)


def mo_transform(f: GroupFunction) -> GroupFunction:
    """x -> f(x^-1)^-1, the involution intertwining the two actions."""
    return GroupFunction(f.domain, f.codomain, f.codomain.inverse[f.values[f.domain.inverse]])


@dataclass(frozen=True)
class Classification:
    identity_preserving: bool
    inverse_preserving: bool
    strongly_inverse_preserving: bool
    sandwich_morphism: bool
    homomorphism: bool
    witnesses: dict = field(default_factory=dict)

    def flags(self) -> dict[str, bool]:
        return {
            k: getattr(self, k)
            for k in (
                "identity_preserving",
                "inverse_preserving",
                "strongly_inverse_preserving",
                "sandwich_morphism",
                "homomorphism",
            )
        }

    def to_dict(self) -> dict:
        return {**self.flags(), "witnesses": {k: list(w) for k, w in self.witnesses.items()}}


def _first(mask):
    hits = np.argwhere(mask)
    return None if hits.size == 0 else tuple(int(x) for x in hits[0])


def classify(f: GroupFunction) -> Classification:
    """All five flags, each with the lexicographically first violation.

    Strong inverse preservation is evaluated from its definition (every
    left conjugate inverse preserving) independently of the sandwich
    morphism law; the two always agree and a disagreement raises.
    """
    G, H = f.domain, f.codomain
    v = f.values
    gt, gi, ht, hi = G.table, G.inverse, H.table, H.inverse
    a = np.arange(G.order)[:, None]
    x = np.arange(G.order)[None, :]
    fa = v[a]
    w = {
        "identity_preserving": None if v[G.identity] == H.identity else (G.identity,),
        "inverse_preserving": _first(hi[v[gi]] != v),
        # f^a(x^-1) == f^a(x)^-1 for all a, x; witness (a, x)
        "strongly_inverse_preserving": _first(ht[hi[fa], v[gt[a, gi[x]]]] != hi[ht[hi[fa], v[gt[a, x]]]]),
        # f(a b^-1 a) == f(a) f(b)^-1 f(a); witness (a, b)
        "sandwich_morphism": _first(v[gt[gt[a, gi[x]], a]] != ht[ht[fa, hi[v[x]]], fa]),
        "homomorphism": _first(v[gt[a, x]] != ht[fa, v[x]]),
    }
    out = Classification(**{k: wit is None for k, wit in w.items()}, witnesses={k: wit for k, wit in w.items() if wit})
    if out.strongly_inverse_preserving != out.sandwich_morphism:
        raise AssertionError(f"strong inverse preservation and sandwich law disagree on {f}")
    return out


def strongly_inverse_preserving_slow(f: GroupFunction) -> bool:
    """Reference check: materialize every left conjugate and test it."""
    return all(
        mo_transform(conjugate(f, a)) == conjugate(f, a) for a in range(f.domain.order)
    )


def conjugate_identity_holds(f: GroupFunction) -> bool:
    """f(ax) f(a)^-1 f(ax^-1) = f(a) for all a, x.

    This is the rearranged form of "every conjugate is inverse preserving"
    that specializes to the sandwich law at x = b^-1 a.
    """
    return bool(_kernels.classify_batch(f.values[None, :], *_tables(f))[2][0])


def _tables(f: GroupFunction):
    return f.domain.table, f.domain.inverse, f.codomain.table, f.codomain.inverse


def all_functions(g: FiniteGroup, h: FiniteGroup, cap: int | None = None):
    """Every function g -> h, in lexicographic order of value arrays."""
    cap = get_cap("functions") if cap is None else cap
    total = h.order**g.order
    if total > cap:
        raise CapExceeded(
            f"{total} functions {g.name}->{h.name} exceed cap {cap}; use sample_functions instead"
        )
    for vals in itertools.product(range(h.order), repeat=g.order):
        yield GroupFunction(g, h, vals)


def function_space(g: FiniteGroup, h: FiniteGroup, cap: int | None = None) -> np.ndarray:
    """``all_functions`` as one (|h|^|g|, |g|) array, same order."""
    cap = get_cap("functions") if cap is None else cap
    total = h.order**g.order
    if total > cap:
        raise CapExceeded(f"{total} functions {g.name}->{h.name} exceed cap {cap}")
    codes = np.arange(total, dtype=np.int64)
    weights = h.order ** np.arange(g.order - 1, -1, -1, dtype=np.int64)
    return (codes[:, None] // weights[None, :]) % h.order


def sample_functions(g: FiniteGroup, h: FiniteGroup, count: int, seed: int) -> np.ndarray:
    """``count`` uniformly random value arrays, reproducible from ``seed``."""
    rng = np.random.default_rng(seed)
    return rng.integers(0, h.order, size=(count, g.order), dtype=np.int64)


def classify_values(g: FiniteGroup, h: FiniteGroup, values: np.ndarray) -> dict[str, np.ndarray]:
    """Vectorized flags over a batch of value arrays (rows)."""
    sip, sm, eq1, eq1_printed = _kernels.classify_batch(
        np.ascontiguousarray(values, dtype=np.int64), g.table, g.inverse, h.table, h.inverse
    )
    return {
        "strongly_inverse_preserving": sip,
        "sandwich_morphism": sm,
        "conjugate_identity": eq1,
        "conjugate_identity_as_printed": eq1_printed,
    }


def function_to_json(f: GroupFunction) -> dict:
    return {"domain": f.domain.name, "codomain": f.codomain.name, "values": f.values.tolist()}


def function_from_json(data: dict) -> GroupFunction:
    from .groups import group_from_json

    return GroupFunction(group_from_json(data["domain"]), group_from_json(data["codomain"]), data["values"])
