"""Hot-loop kernels for descent-statistics accumulation.

The compiled Cython kernel is used when available; otherwise a vectorized
numpy fallback with identical semantics is selected.  Set METAMATRIX_PURE=1
to force the fallback.
"""

from __future__ import annotations

import os

from ._profiles_py import count_profiles_batch as _count_py

if os.environ.get("METAMATRIX_PURE"):
    count_profiles_batch = _count_py
    IMPLEMENTATION = "python"
else:
    try:
        from ._profiles_c import count_profiles_batch as _count_c

        count_profiles_batch = _count_c
        IMPLEMENTATION = "cython"
    except ImportError:
        count_profiles_batch = _count_py
        IMPLEMENTATION = "python"

count_profiles_python = _count_py

__all__ = [
    "count_profiles_batch",
    "count_profiles_python",
    "IMPLEMENTATION",
]
