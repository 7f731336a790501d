"""Select the compiled kernels when available, else the numpy fallback.

Set ``HERMITE_CS_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _fallback

if os.environ.get("HERMITE_CS_PURE_PYTHON"):
    _impl = _fallback
    BACKEND = "numpy"
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _fallback
        BACKEND = "numpy"

hermite_raw_table = _impl.hermite_raw_table
hermite_scaled_table = _impl.hermite_scaled_table
hermite2d_raw_table = _impl.hermite2d_raw_table
hermite2d_scaled_table = _impl.hermite2d_scaled_table
bilinear_exp_apply = _impl.bilinear_exp_apply


def worker_count() -> int:
    """Worker cap from ``HERMITE_CS_THREADS`` (default: CPU count)."""
    raw = os.environ.get("HERMITE_CS_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1
