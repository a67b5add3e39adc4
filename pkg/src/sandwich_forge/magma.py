"""Finite magmas as Cayley tables, the sandwich axioms, and canonical forms.

Elements are the integers ``0..n-1``; ``table[a, b]`` holds the product
``ab``.  Row ``a`` is the left translation ``x -> ax``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _kernels
from .caps import CapExceeded, get_cap

SANDWICH_AXIOMS = ("ld", "ii", "li", "ls")


class MagmaError(ValueError):
    """Malformed Cayley table."""


class NotASandwichError(ValueError):
    """Raised when an operation needs a sandwich and gets something else."""

    def __init__(self, axiom: str, witness: tuple):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"not a sandwich: {axiom.upper()} fails at {witness}")


class LeftTranslationError(ValueError):
    def __init__(self, a: int, b: int, c: int):
        self.columns = (b, c)
        super().__init__(f"row {a} is not a bijection: columns {b} and {c} both give {a}*{b}")


@dataclass(frozen=True, eq=False)
class Magma:
    """An order-n binary operation table. Immutable."""

    table: np.ndarray

    def __post_init__(self):
        t = np.array(self.table, dtype=np.int64, copy=True)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] < 1:
            raise MagmaError(f"table must be a non-empty square array, got shape {t.shape}")
        n = t.shape[0]
        bad = np.argwhere((t < 0) | (t >= n))
        if bad.size:
            r, c = bad[0]
            raise MagmaError(f"entry at row {r}, column {c} is {t[r, c]}, outside 0..{n - 1}")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __call__(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def __eq__(self, other):
        if not isinstance(other, Magma):
            return NotImplemented
        return np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        return f"Magma({self.table.tolist()})"

    def tolist(self) -> list[list[int]]:
        return self.table.tolist()

    def relabel(self, perm) -> "Magma":
        return relabel(self, perm)


def right_zero(n: int) -> Magma:
    """The magma ab = b."""
    return Magma(np.tile(np.arange(n), (n, 1)))


@dataclass(frozen=True)
class AxiomProfile:
    ld: bool
    ii: bool
    li: bool
    ls: bool
    lc: bool
    right_zero: bool
    right_cancellative: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def is_sandwich(self) -> bool:
        return self.ld and self.ii and self.li and self.ls

    def flags(self) -> dict[str, bool]:
        return {k: getattr(self, k) for k in ("ld", "ii", "li", "ls", "lc", "right_zero", "right_cancellative")}

    def to_dict(self) -> dict:
        return {
            **self.flags(),
            "is_sandwich": self.is_sandwich,
            "witnesses": {k: list(v) for k, v in self.witnesses.items()},
        }


def _first(mask: np.ndarray):
    hits = np.argwhere(mask)
    if hits.size == 0:
        return None
    return tuple(int(v) for v in hits[0])


def _violations(T: np.ndarray) -> dict:
    """Lexicographically first violation of each law, or None."""
    n = T.shape[0]
    A = np.arange(n)
    a2, b2 = A[:, None], A[None, :]
    a3, b3, c3 = A[:, None, None], A[None, :, None], A[None, None, :]
    return {
        "ld": _first(T[T[:, :, None], T[:, None, :]] != T[a3, T[None, :, :]]),
        "ii": _first(T[A, A] != A),
        "li": _first(T[a2, T] != b2),
        "ls": _first((T == b2) & (T.T != a2)),
        "lc": _first((T[:, :, None] == T[:, None, :]) & (b3 != c3)),
        "right_zero": _first(T != b2),
        # (a, b, c) with ba = ca and b != c
        "right_cancellative": _first((T.T[:, :, None] == T.T[:, None, :]) & (b3 != c3)),
    }


def axiom_profile(m: Magma) -> AxiomProfile:
    """Evaluate every law exhaustively; witnesses are lexicographically first.

    Witness shapes: ii ``(a,)``; li, ls, right_zero ``(a, b)``; ld, lc
    ``(a, b, c)``; right_cancellative ``(a, b, c)`` with ``ba = ca``, ``b != c``.
    """
    v = _violations(m.table)
    return AxiomProfile(
        **{k: w is None for k, w in v.items()},
        witnesses={k: w for k, w in v.items() if w is not None},
    )


def is_sandwich(m: Magma) -> bool:
    return axiom_profile(m).is_sandwich


def require_sandwich(m: Magma) -> None:
    prof = axiom_profile(m)
    for ax in SANDWICH_AXIOMS:
        if not getattr(prof, ax):
            raise NotASandwichError(ax, prof.witnesses[ax])


def derived_identities(m: Magma) -> dict:
    """First counterexample (or None) to the three consequences of the axioms.

    ``left_cancellation``: ab = ac implies b = c.
    ``expansion``: (ab)c = a(b(ac)).
    ``exchange``: (ab)c = bc iff (ba)c = ac.
    """
    T = m.table
    n = m.order
    A = np.arange(n)
    b3, c3 = A[None, :, None], A[None, None, :]
    ab_c = T[T[:, :, None], c3]                     # (ab)c at [a, b, c]
    a_bac = T[A[:, None, None], T[b3, T[:, None, :]]]  # a(b(ac))
    ba_c = T[T.T[:, :, None], c3]                   # (ba)c
    bc = T[None, :, :]
    ac = T[:, None, :]
    return {
        "left_cancellation": _first((T[:, :, None] == T[:, None, :]) & (b3 != c3)),
        "expansion": _first(ab_c != a_bac),
        "exchange": _first((ab_c == bc) != (ba_c == ac)),
    }


def is_closed(m: Magma, subset) -> bool:
    s = np.array(sorted(set(int(x) for x in subset)), dtype=np.int64)
    return bool(np.isin(m.table[np.ix_(s, s)], s).all())


def subsandwich_closure(m: Magma, seed) -> frozenset[int]:
    """Smallest product-closed superset of ``seed``."""
    require_sandwich(m)
    current = set(int(x) for x in seed)
    if not current:
        raise ValueError("seed must be non-empty")
    if not all(0 <= x < m.order for x in current):
        raise ValueError(f"seed {sorted(current)} has elements outside 0..{m.order - 1}")
    while True:
        s = np.fromiter(current, dtype=np.int64)
        grown = current | set(m.table[np.ix_(s, s)].ravel().tolist())
        if grown == current:
            return frozenset(current)
        current = grown


def relabel(m: Magma, perm) -> Magma:
    """The isomorphic copy where element ``a`` is renamed ``perm[a]``."""
    p = np.asarray(perm, dtype=np.int64)
    n = m.order
    if sorted(p.tolist()) != list(range(n)):
        raise ValueError(f"{p.tolist()} is not a permutation of 0..{n - 1}")
    out = np.empty_like(m.table)
    out[np.ix_(p, p)] = p[m.table]
    return Magma(out)


@lru_cache(maxsize=None)
def _all_perms(n: int):
    fwd = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    return fwd, np.argsort(fwd, axis=1)


def _signature(T: np.ndarray, a: int):
    row = T[a]
    cycles = []
    seen = set()
    for x in range(len(row)):
        if x in seen:
            continue
        length = 0
        y = x
        while y not in seen:
            seen.add(y)
            y = int(row[y])
            length += 1
        cycles.append(length)
    return (
        int(T[a, a] == a),
        int((T == a).sum()),
        int((T[:, a] == a).sum()),
        tuple(sorted(cycles)),
        len(set(T[a].tolist())),
        len(set(T[:, a].tolist())),
    )


def _class_perms(T: np.ndarray, limit: int = 2_000_000):
    """Relabelings that send elements to labels sorted by an invariant signature."""
    n = T.shape[0]
    sigs = [_signature(T, a) for a in range(n)]
    classes = [[a for a in range(n) if sigs[a] == s] for s in sorted(set(sigs))]
    total = 1
    for c in classes:
        total *= int(np.prod(range(1, len(c) + 1)))
    if total > limit:
        raise CapExceeded(f"canonical form would need {total} relabelings (limit {limit})")
    invs = []
    for parts in itertools.product(*(itertools.permutations(c) for c in classes)):
        invs.append([x for part in parts for x in part])  # new label -> old element
    inv = np.array(invs, dtype=np.int64)
    return np.argsort(inv, axis=1), inv


def canonicalize(m: Magma, cap: int | None = None) -> tuple[Magma, np.ndarray]:
    """Lexicographically least relabeling of ``m`` and a permutation achieving it.

    Orders up to the ``canonical_full`` cap scan all n! relabelings.  Larger
    orders only scan relabelings that sort elements by an isomorphism
    invariant signature, which is still a canonical form.
    """
    n = m.order
    cap = get_cap("canonical") if cap is None else cap
    if n > cap:
        raise CapExceeded(f"canonicalize supports order <= {cap}, got {n}")
    if n <= get_cap("canonical_full"):
        fwd, inv = _all_perms(n)
    else:
        fwd, inv = _class_perms(m.table)
    k = _kernels.canonical_index(m.table, fwd, inv)
    p = fwd[k].copy()
    return relabel(m, p), p


def canonical_key(m: Magma) -> bytes:
    return canonicalize(m)[0].table.tobytes()


def is_isomorphic(m1: Magma, m2: Magma) -> bool:
    return m1.order == m2.order and canonical_key(m1) == canonical_key(m2)


def left_translation(m: Magma, a: int) -> np.ndarray:
    """The permutation ``x -> ax`` as an index array."""
    row = m.table[a]
    seen = {}
    for b, v in enumerate(row.tolist()):
        if v in seen:
            raise LeftTranslationError(a, seen[v], b)
        seen[v] = b
    return row.copy()


def cycles(perm) -> list[tuple[int, ...]]:
    """Non-trivial cycles of a permutation, each starting at its least element."""
    perm = [int(x) for x in perm]
    seen = set()
    out = []
    for x in range(len(perm)):
        if x in seen:
            continue
        cyc = []
        y = x
        while y not in seen:
            seen.add(y)
            cyc.append(y)
            y = perm[y]
        if len(cyc) > 1:
            out.append(tuple(cyc))
    return out
