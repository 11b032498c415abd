"""Selects the compiled kernel module when available.

Set ARITHCYCLE_PURE=1 to force the pure-Python fallback even when the
compiled extension is importable.
"""
from __future__ import annotations

import os

FORCE_PURE_ENV = "ARITHCYCLE_PURE"

if os.environ.get(FORCE_PURE_ENV, "") not in ("", "0"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as _impl  # type: ignore[no-redef]

NAME: str = _impl.NAME
jacobi = _impl.jacobi
jacobi_batch = _impl.jacobi_batch
cycle_scan = _impl.cycle_scan
