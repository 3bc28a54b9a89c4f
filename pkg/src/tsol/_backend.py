"""Kernel selection: compiled extension when built, pure Python otherwise.

The compiled kernels cap at 64 alternatives (one machine word per row);
larger instances silently use the pure fallback.  ``TSOL_BACKEND`` forces
a choice: ``native``, ``python``, or ``auto`` (the default).
"""

from __future__ import annotations

import os

from tsol import _pykernel

try:
    from tsol import _kernel as _native  # type: ignore[attr-defined]
except ImportError:
    _native = None

NATIVE_WORD = 64

_mode = os.environ.get("TSOL_BACKEND", "auto")
if _mode not in ("auto", "native", "python"):
    raise RuntimeError(f"TSOL_BACKEND must be auto, native, or python, not {_mode!r}")
if _mode == "native" and _native is None:
    raise RuntimeError("TSOL_BACKEND=native but the compiled kernel is not built")


def native_available() -> bool:
    return _native is not None


def backend_name() -> str:
    """Name of the backend used for instances within the native word size."""
    if _mode == "python" or _native is None:
        return "python"
    return "native"


def kernel_for(n: int, backend: str | None = None):
    """Kernel module to use for an ``n``-alternative instance."""
    choice = backend or _mode
    if choice == "python":
        return _pykernel
    if choice == "native":
        if _native is None:
            raise RuntimeError("native backend requested but not built")
        if n > NATIVE_WORD:
            raise ValueError(f"native kernel caps at {NATIVE_WORD} alternatives")
        return _native
    if _native is not None and n <= NATIVE_WORD:
        return _native
    return _pykernel
