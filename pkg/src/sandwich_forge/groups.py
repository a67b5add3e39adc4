"""Finite groups as validated Cayley tables, a small catalog, and the
group-side constructions: sandwich structure, center, 2-torsion."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .caps import CapExceeded, get_cap
from .magma import Magma, is_closed


class GroupValidationError(ValueError):
    """Carries every violated group law as ``(law, witness, message)``."""

    def __init__(self, violations):
        self.violations = violations
        super().__init__("; ".join(v[2] for v in violations))


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: np.ndarray
    identity: int
    inverse: np.ndarray
    name: str = ""

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def __repr__(self):
        return f"FiniteGroup({self.name or '?'}, order={self.order})"


def validate_group(table, identity=None, inverse=None, name: str = "") -> FiniteGroup:
    """Check the group laws exhaustively (O(n^3)).

    ``identity`` and ``inverse`` are derived from the table when omitted.
    Raises GroupValidationError listing every violated law with a witness.
    """
    t = np.array(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] < 1:
        raise GroupValidationError([("shape", None, f"table must be square, got {t.shape}")])
    n = t.shape[0]
    bad = np.argwhere((t < 0) | (t >= n))
    if bad.size:
        r, c = (int(x) for x in bad[0])
        raise GroupValidationError([("closure", (r, c), f"entry ({r}, {c}) = {t[r, c]} outside 0..{n - 1}")])
    A = np.arange(n)
    errs = []
    assoc = np.argwhere(t[t[:, :, None], A[None, None, :]] != t[A[:, None, None], t[None, :, :]])
    if assoc.size:
        a, b, c = (int(x) for x in assoc[0])
        errs.append(("associativity", (a, b, c), f"not associative: ({a}{b}){c} != {a}({b}{c})"))

    if identity is None:
        units = [e for e in range(n) if (t[e] == A).all() and (t[:, e] == A).all()]
        if not units:
            errs.append(("identity", None, "no two-sided identity element"))
            raise GroupValidationError(errs)
        identity = units[0]
    e = int(identity)
    if not (0 <= e < n):
        errs.append(("identity", (e,), f"identity {e} outside 0..{n - 1}"))
        raise GroupValidationError(errs)
    not_unit = np.flatnonzero((t[e] != A) | (t[:, e] != A))
    if not_unit.size:
        x = int(not_unit[0])
        errs.append(("identity", (x,), f"{e} is not a two-sided identity: fails at {x}"))

    if inverse is None:
        inv = np.full(n, -1, dtype=np.int64)
        for a in range(n):
            hits = np.flatnonzero((t[a] == e) & (t[:, a] == e))
            if hits.size:
                inv[a] = hits[0]
            else:
                errs.append(("inverse", (a,), f"no inverse for element {a}"))
    else:
        inv = np.array(inverse, dtype=np.int64)
        if inv.shape != (n,):
            errs.append(("inverse", None, f"inverse must have length {n}"))
        else:
            for a in range(n):
                b = int(inv[a])
                if not (0 <= b < n) or t[a, b] != e or t[b, a] != e:
                    errs.append(("inverse", (a,), f"inverse[{a}] = {b} is not a two-sided inverse"))
    if errs:
        raise GroupValidationError(errs)
    t.setflags(write=False)
    inv.setflags(write=False)
    return FiniteGroup(t, e, inv, name)


def _check_order(n: int):
    cap = get_cap("group")
    if n > cap:
        raise CapExceeded(f"group order {n} exceeds cap {cap}")


def cyclic(n: int) -> FiniteGroup:
    _check_order(n)
    A = np.arange(n)
    return validate_group((A[:, None] + A[None, :]) % n, 0, (-A) % n, f"C{n}")


def elementary_abelian_2(k: int) -> FiniteGroup:
    """C2^k with elements the k-bit integers under XOR."""
    n = 2**k
    _check_order(n)
    A = np.arange(n)
    name = "C1" if k == 0 else ("C2" if k == 1 else f"C2^{k}")
    return validate_group(A[:, None] ^ A[None, :], 0, A, name)


def dihedral(n: int) -> FiniteGroup:
    """Order 2n; ``r^i s^j`` is index ``i + n*j``."""
    _check_order(2 * n)
    t = np.empty((2 * n, 2 * n), dtype=np.int64)
    for x in range(2 * n):
        i, j = x % n, x // n
        for y in range(2 * n):
            k, l = y % n, y // n
            t[x, y] = (i + (k if j == 0 else -k)) % n + n * ((j + l) % 2)
    return validate_group(t, 0, None, f"D{n}")


def dicyclic(n: int) -> FiniteGroup:
    """Order 4n: <a, x | a^2n = 1, x^2 = a^n, x a x^-1 = a^-1>; ``a^i x^j`` is ``i + 2n*j``."""
    m = 2 * n
    _check_order(2 * m)
    t = np.empty((2 * m, 2 * m), dtype=np.int64)
    for u in range(2 * m):
        i, j = u % m, u // m
        for v in range(2 * m):
            k, l = v % m, v // m
            if j == 0:
                t[u, v] = (i + k) % m + m * l
            elif l == 0:
                t[u, v] = (i - k) % m + m
            else:
                t[u, v] = (i - k + n) % m
    name = {2: "Q8", 4: "Q16"}.get(n, f"Dic{n}")
    return validate_group(t, 0, None, name)


def quaternion8() -> FiniteGroup:
    """Q8 with 0 = 1, 2 = -1 (the central involution), 1 = i, 4 = j."""
    return dicyclic(2)


def _perm_group(perms, name) -> FiniteGroup:
    index = {p: i for i, p in enumerate(perms)}
    t = [[index[tuple(p[q[x]] for x in range(len(p)))] for q in perms] for p in perms]
    return validate_group(t, 0, None, name)


def symmetric(n: int) -> FiniteGroup:
    """Permutations of 0..n-1 in lexicographic order; (pq)(x) = p(q(x))."""
    if not 1 <= n <= 4:
        raise ValueError("symmetric(n) supports 1 <= n <= 4")
    return _perm_group(list(itertools.permutations(range(n))), f"S{n}")


def alternating4() -> FiniteGroup:
    def even(p):
        return sum(p[i] > p[j] for i in range(4) for j in range(i + 1, 4)) % 2 == 0

    return _perm_group([p for p in itertools.permutations(range(4)) if even(p)], "A4")


def direct_product(g: FiniteGroup, h: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """Pairs ``(a, b)`` flattened row-major to ``a * |h| + b``."""
    m = h.order
    _check_order(g.order * m)
    t = (g.table[:, None, :, None] * m + h.table[None, :, None, :]).reshape(g.order * m, g.order * m)
    inv = (g.inverse[:, None] * m + h.inverse[None, :]).ravel()
    return validate_group(t, g.identity * m + h.identity, inv, name or f"{g.name}x{h.name}")


_ATOM = re.compile(r"^(C|D|S|Q|Dic|A)(\d+)(?:\^(\d+))?$")


def _atom(text: str) -> FiniteGroup:
    m = _ATOM.match(text)
    if not m:
        raise ValueError(f"unsupported group descriptor {text!r}")
    kind, num, power = m.group(1), int(m.group(2)), m.group(3)
    if kind == "C" and num == 2 and power:
        return elementary_abelian_2(int(power))
    if kind == "C":
        g = cyclic(num)
    elif kind == "D":
        g = dihedral(num)
    elif kind == "S":
        g = symmetric(num)
    elif kind == "Q" and num in (8, 16):
        g = dicyclic(num // 4)
    elif kind == "Dic":
        g = dicyclic(num)
    elif kind == "A" and num == 4:
        g = alternating4()
    else:
        raise ValueError(f"unsupported group descriptor {text!r}")
    if power:
        base = g
        for _ in range(int(power) - 1):
            g = direct_product(g, base)
        g = FiniteGroup(g.table, g.identity, g.inverse, text)
    return g


def build_group(descriptor: str) -> FiniteGroup:
    """Build a group from a name such as ``C4``, ``C2^3``, ``S3``, ``D4``
    (order 8), ``Q8``, ``Dic3``, ``A4`` or a product ``C2xC4``."""
    parts = descriptor.replace(" ", "").split("x")
    g = _atom(parts[0])
    for p in parts[1:]:
        g = direct_product(g, _atom(p))
    return FiniteGroup(g.table, g.identity, g.inverse, descriptor.replace(" ", ""))


# One name per isomorphism type. Orders up to 8 are complete.
_COMPLETE = [
    "C1", "C2", "C3", "C4", "C2^2", "C5", "C6", "S3", "C7",
    "C8", "C2xC4", "C2^3", "D4", "Q8",
]
_EXTRA = [
    "C9", "C3^2", "C10", "D5", "C11", "C12", "C2xC6", "D6", "A4", "Dic3",
    "C13", "C14", "D7", "C15",
    "C16", "C2xC8", "C4^2", "C2^2xC4", "C2^4", "D8", "Q16", "C2xD4", "C2xQ8",
]
COMPLETE_UP_TO = 15


@dataclass(frozen=True)
class GroupCatalogEntry:
    name: str
    group: FiniteGroup


@lru_cache(maxsize=None)
def _entry(name: str) -> GroupCatalogEntry:
    return GroupCatalogEntry(name, build_group(name))


def catalog(max_order: int = 8) -> list[GroupCatalogEntry]:
    """Catalog groups of order <= max_order, sorted by order (stable).

    Complete up to order 15.  Order 16 holds 9 of the 14 groups: the five
    abelian ones plus D8, Q16, C2xD4 and C2xQ8.
    """
    out = [_entry(nm) for nm in _COMPLETE + _EXTRA]
    out = [e for e in out if e.group.order <= max_order]
    return sorted(out, key=lambda e: e.group.order)


def catalog_is_complete(max_order: int) -> bool:
    return max_order <= COMPLETE_UP_TO


def sandwich_of(g: FiniteGroup) -> Magma:
    """The magma a*b = a . b^-1 . a."""
    t = g.table
    return Magma(t[t[:, g.inverse], np.arange(g.order)[:, None]])


def center(g: FiniteGroup) -> frozenset[int]:
    return frozenset(int(z) for z in np.flatnonzero((g.table == g.table.T).all(axis=0)))


def is_subgroup(g: FiniteGroup, subset) -> bool:
    s = np.array(sorted(subset), dtype=np.int64)
    return g.identity in subset and bool(np.isin(g.table[np.ix_(s, s)], s).all()) and bool(
        np.isin(g.inverse[s], s).all()
    )


def two_torsion(g: FiniteGroup) -> frozenset[int]:
    """Elements with x.x = 1; closed under the sandwich product."""
    A = np.arange(g.order)
    out = frozenset(int(x) for x in np.flatnonzero(g.table[A, A] == g.identity))
    if not is_closed(sandwich_of(g), out):
        raise AssertionError(f"2-torsion of {g.name} is not sandwich-closed")
    return out


def central_involutions(g: FiniteGroup) -> frozenset[int]:
    """Central elements of order 1 or 2; always a subgroup."""
    A = np.arange(g.order)
    sq = g.table[A, A] == g.identity
    out = frozenset(z for z in center(g) if sq[z])
    if not is_subgroup(g, out):
        raise AssertionError(f"central involutions of {g.name} do not form a subgroup")
    return out


def left_cosets(g: FiniteGroup, subgroup) -> list[frozenset[int]]:
    """Cosets a.H in order of their least element."""
    h = sorted(subgroup)
    seen = set()
    out = []
    for a in range(g.order):
        if a in seen:
            continue
        coset = frozenset(int(g.table[a, x]) for x in h)
        seen |= coset
        out.append(coset)
    return out


def group_to_json(g: FiniteGroup) -> dict:
    return {
        "name": g.name,
        "order": g.order,
        "table": g.table.tolist(),
        "identity": g.identity,
        "inverse": g.inverse.tolist(),
    }


def group_from_json(data) -> FiniteGroup:
    """Accept a catalog name or a ``{"table", "identity", "inverse"}`` object."""
    if isinstance(data, str):
        return build_group(data)
    return validate_group(data["table"], data.get("identity"), data.get("inverse"), data.get("name", ""))
