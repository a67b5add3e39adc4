"""Time each hot kernel on the numba and numpy backends.

    python3 benchmarks/bench_kernels.py [--repeat N]

Numba timings exclude the first (compiling) call.
"""

import argparse
import time

import numpy as np

from sandwich_forge._kernels import backends
from sandwich_forge.eqdsl import compile_laws, sandwich_laws
from sandwich_forge.funcmaps import sample_functions
from sandwich_forge.groups import build_group
from sandwich_forge.magma import _all_perms
from sandwich_forge.search import _row_candidates, first_row_forms


def workloads():
    rng = np.random.default_rng(0)
    fwd, inv = _all_perms(7)
    tab = rng.integers(0, 7, size=(7, 7))
    yield "canonical_index n=7", lambda k: k.canonical_index(tab, fwd, inv)

    yield "sweep_sandwiches n=3", lambda k: k.sweep_sandwiches(3, True, 4096)

    rows = [_row_candidates(6, [r]) for r in first_row_forms(6)]
    yield "enumerate_rows n=6", lambda k: [k.enumerate_rows(6, c, s, n, 4096) for c, s, n in rows]

    laws = sandwich_laws()
    code, meta = compile_laws(laws.select(["II", "LI", "LS"]), laws.select(["LD"]))
    init = np.full((5, 5), -1, dtype=np.int64)
    yield "model_search forbid LD n=5", lambda k: k.model_search(init, code, meta, 1, 16)

    g, h = build_group("D4"), build_group("Q8")
    vals = sample_functions(g, h, 10_000, seed=0)
    args = (vals, g.table, g.inverse, h.table, h.inverse)
    yield "classify_batch 10^4 D4->Q8", lambda k: k.classify_batch(*args)


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    mods = backends()
    names = sorted(mods)
    print(f"{'kernel':<30}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) == 2 else ""))
    for label, job in workloads():
        times = {}
        for n in names:
            job(mods[n])  # warm up / compile
            times[n] = best_of(lambda: job(mods[n]), args.repeat)
        line = f"{label:<30}" + "".join(f"{times[n] * 1e3:>10.2f}ms" for n in names)
        if len(names) == 2:
            line += f"{times['numpy'] / times['numba']:>11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
