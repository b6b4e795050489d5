"""Selects the compiled kernels when importable, else the numpy fallback.

Set ``BUNDLE_MDPC_PURE=1`` to force the fallback.  ``BUNDLE_MDPC_THREADS``
caps the worker count; it changes speed, never results.
"""

import os

from . import _fallback

if os.environ.get("BUNDLE_MDPC_PURE", "") not in ("", "0"):
    kernels = _fallback
    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels

        BACKEND = "cython"
    except ImportError:
        kernels = _fallback
        BACKEND = "python"


def thread_count() -> int:
    raw = os.environ.get("BUNDLE_MDPC_THREADS", "")
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 1:
        value = os.cpu_count() or 1
    return value


def split_range(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    """Contiguous, ordered chunks covering ``[lo, hi)``."""
    parts = max(1, min(parts, hi - lo))
    step, extra = divmod(hi - lo, parts)
    out, start = [], lo
    for i in range(parts):
        end = start + step + (1 if i < extra else 0)
        out.append((start, end))
        start = end
    return out
