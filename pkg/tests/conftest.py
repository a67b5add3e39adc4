import itertools
from importlib import resources

import numpy as np
import pytest

from sandwich_forge.magma import Magma
from sandwich_forge.tables import loads


def load_bundled(name):
    return Magma(loads(resources.files("sandwich_forge.data").joinpath(f"{name}.tbl").read_text())["table"])


@pytest.fixture(scope="session")
def bundled():
    """Counterexample tables keyed by the axiom each one breaks."""
    return {k: load_bundled(f"not_{k}") for k in ("ii", "ls", "li", "ld", "ld_corrected")}


def laws_by_loops(t):
    """Reference evaluation of the axioms with plain loops."""
    n = len(t)
    r = range(n)
    return {
        "ld": all(t[t[a][b]][t[a][c]] == t[a][t[b][c]] for a in r for b in r for c in r),
        "ii": all(t[a][a] == a for a in r),
        "li": all(t[a][t[a][b]] == b for a in r for b in r),
        "ls": all(t[b][a] == a for a in r for b in r if t[a][b] == b),
        "lc": all(b == c for a in r for b in r for c in r if t[a][b] == t[a][c]),
        "right_zero": all(t[a][b] == b for a in r for b in r),
        "right_cancellative": all(b == c for a in r for b in r for c in r if t[b][a] == t[c][a]),
    }


def all_tables(n):
    for cells in itertools.product(range(n), repeat=n * n):
        yield [list(cells[i * n:(i + 1) * n]) for i in range(n)]


def relabel_by_loops(t, p):
    n = len(t)
    out = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            out[p[a]][p[b]] = p[t[a][b]]
    return out


def canonical_by_loops(t):
    n = len(t)
    return min(relabel_by_loops(t, p) for p in itertools.permutations(range(n)))


def brute_sandwich_classes(n):
    """Canonical forms of every sandwich of order n from a raw sweep."""
    out = set()
    for t in all_tables(n):
        if all(v for k, v in laws_by_loops(t).items() if k in ("ld", "ii", "li", "ls")):
            out.add(tuple(map(tuple, canonical_by_loops(t))))
    return sorted(out)


def perm_compose(p, q):
    return tuple(p[x] for x in q)


def perm_inverse(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
