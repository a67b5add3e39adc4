"""Order caps, overridable through the ``SANDWICH_FORGE_CAPS`` environment variable.

The variable holds comma separated ``key=value`` pairs, e.g.
``SANDWICH_FORGE_CAPS="enumerate=8,automorphisms=9"``.
"""

from __future__ import annotations

import os

DEFAULTS = {
    "canonical": 10,       # largest magma order canonicalize accepts
    "canonical_full": 8,   # full n! relabeling up to this order
    "enumerate": 7,        # pruned sandwich enumeration
    "oracle": 4,           # brute-force sandwich sweep
    "automorphisms": 8,    # sandwich automorphism search
    "functions": 10**7,    # size of an exhaustive function space
    "model": 8,            # find_model order
    "group": 64,           # largest constructible group
}


def _parse(raw: str) -> dict[str, int]:
    out = {}
    for item in raw.split(","):
        item = item.strip()
        if not item:
            continue
        key, sep, value = item.partition("=")
        if not sep or key.strip() not in DEFAULTS:
            raise ValueError(f"bad SANDWICH_FORGE_CAPS entry {item!r}; known keys: {sorted(DEFAULTS)}")
        out[key.strip()] = int(float(value))
    return out


def get_cap(name: str) -> int:
    overrides = _parse(os.environ.get("SANDWICH_FORGE_CAPS", ""))
    return overrides.get(name, DEFAULTS[name])


class CapExceeded(ValueError):
    """An order or size limit was exceeded."""
