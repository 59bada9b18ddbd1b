"""Optional numba acceleration.

Set ``RINGCLASS_DISABLE_JIT=1`` to run the kernels as plain Python over numpy
arrays. The flag is read once at import time.
"""

import os

JIT_ENABLED = os.environ.get("RINGCLASS_DISABLE_JIT", "").strip().lower() not in {"1", "true", "yes"}

if JIT_ENABLED:
    try:
        from numba import njit as _njit
    except ImportError:  # pragma: no cover
        JIT_ENABLED = False

if JIT_ENABLED:

    def njit(fn):
        return _njit(cache=True, nogil=True)(fn)

else:

    def njit(fn):
        return fn
