"""Hot loops, compiled with numba when available.

Set ``SANDWICH_FORGE_BACKEND=numpy`` to force the pure numpy path (the
numba path is used by default when numba imports).
"""

import os

from . import _numpy

BACKEND = os.environ.get("SANDWICH_FORGE_BACKEND", "numba").lower()
if BACKEND not in ("numba", "numpy"):
    raise ImportError(f"SANDWICH_FORGE_BACKEND must be 'numba' or 'numpy', got {BACKEND!r}")

if BACKEND == "numba":
    try:
        from . import _numba as _impl
    except ImportError:  # pragma: no cover
        BACKEND = "numpy"
        _impl = _numpy
else:
    _impl = _numpy

canonical_index = _impl.canonical_index
sweep_sandwiches = _impl.sweep_sandwiches
enumerate_rows = _impl.enumerate_rows
model_search = _impl.model_search
classify_batch = _impl.classify_batch


def backends():
    """Map of backend name to kernel module, for benchmarks and cross-checks."""
    out = {"numpy": _numpy}
    try:
        from . import _numba
        out["numba"] = _numba
    except ImportError:  # pragma: no cover
        pass
    return out
