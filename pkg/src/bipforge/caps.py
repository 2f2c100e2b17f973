"""Instance-size caps for the exhaustive searches.

``BIPFORGE_CAP`` overrides the default cap of every search, but a cap is never
allowed above the search's hard maximum.
"""

from __future__ import annotations

import os

from .errors import CapExceeded

# name -> (default, hard maximum), both in host vertices
CAPS = {
    "treewidth": (40, 64),
    "pathwidth": (16, 22),
    "treedepth": (18, 26),
    "minor": (12, 20),
    "topological": (16, 24),
    "nabla": (9, 11),
    "c_param": (14, 24),
}


def resolve_cap(name: str, cap: int | None = None) -> int:
    default, hard = CAPS[name]
    if cap is None:
        env = os.environ.get("BIPFORGE_CAP")
        cap = int(env) if env else default
    return min(cap, hard)


def enforce(name: str, size: int, cap: int | None = None) -> int:
    limit = resolve_cap(name, cap)
    if size > limit:
        raise CapExceeded(name, size, limit)
    return limit
