import os
import subprocess
import sys

import numpy as np
import pytest

from sandwich_forge import _kernels
from sandwich_forge.eqdsl import compile_laws, sandwich_laws
from sandwich_forge.funcmaps import sample_functions
from sandwich_forge.groups import catalog, symmetric
from sandwich_forge.magma import _all_perms
from sandwich_forge.search import _row_candidates, first_row_forms

BACKENDS = _kernels.backends()
needs_both = pytest.mark.skipif(len(BACKENDS) < 2, reason="numba not installed")
LAWS = sandwich_laws()


@needs_both
def test_canonical_index_agrees(rng):
    fwd, inv = _all_perms(5)
    for _ in range(30):
        t = rng.integers(0, 5, size=(5, 5))
        ks = {name: int(k.canonical_index(t, fwd, inv)) for name, k in BACKENDS.items()}
        assert ks["numba"] == ks["numpy"]


@needs_both
@pytest.mark.parametrize("n,full", [(2, True), (3, True), (3, False)])
def test_sweep_agrees(n, full):
    out = {name: k.sweep_sandwiches(n, full, 4096) for name, k in BACKENDS.items()}
    (fa, ba), (fb, bb) = out["numba"], out["numpy"]
    assert fa == fb
    assert sorted(map(bytes, ba[:fa])) == sorted(map(bytes, bb[:fb]))


@needs_both
@pytest.mark.parametrize("n", [4, 5])
def test_enumerate_rows_agrees(n):
    for row0 in first_row_forms(n):
        cands, start, count = _row_candidates(n, [row0])
        a = BACKENDS["numba"].enumerate_rows(n, cands, start, count, 4096)
        b = BACKENDS["numpy"].enumerate_rows(n, cands, start, count, 4096)
        assert a[0] == b[0] and a[2] == b[2]
        assert (a[1][: a[0]] == b[1][: b[0]]).all()


@needs_both
@pytest.mark.parametrize("drop", ["II", "LS", "LI"])
def test_model_search_agrees(drop):
    req = [k for k in ("LD", "II", "LI", "LS") if k != drop]
    code, meta = compile_laws(LAWS.select(req), LAWS.select([drop]))
    init = np.full((3, 3), -1, dtype=np.int64)
    a = BACKENDS["numba"].model_search(init, code, meta, 0, 4096)
    b = BACKENDS["numpy"].model_search(init, code, meta, 0, 4096)
    assert a[0] == b[0] and a[2] == b[2]
    assert (a[1][: a[0]] == b[1][: b[0]]).all()


@needs_both
@pytest.mark.parametrize("entry", catalog(6), ids=lambda e: e.name)
def test_classify_batch_agrees(entry):
    g, h = symmetric(3), entry.group
    vals = sample_functions(g, h, 500, seed=11)
    args = (vals, g.table, g.inverse, h.table, h.inverse)
    a = BACKENDS["numba"].classify_batch(*args)
    b = BACKENDS["numpy"].classify_batch(*args)
    for x, y in zip(a, b):
        assert (np.asarray(x) == np.asarray(y)).all()


def test_backend_flag_selects_numpy():
    code = "from sandwich_forge import _kernels; print(_kernels.BACKEND)"
    env = {**os.environ, "SANDWICH_FORGE_BACKEND": "numpy"}
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


def test_backend_flag_rejects_unknown():
    code = "import sandwich_forge._kernels"
    env = {**os.environ, "SANDWICH_FORGE_BACKEND": "fortran"}
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.returncode != 0 and "SANDWICH_FORGE_BACKEND" in out.stderr


def test_numpy_backend_end_to_end():
    code = (
        "from sandwich_forge.search import enumerate_sandwiches as e;"
        "print([e(n).count for n in range(1, 6)])"
    )
    env = {**os.environ, "SANDWICH_FORGE_BACKEND": "numpy"}
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "[1, 1, 2, 3, 4]"
