"""Kernel backend selection.

Prefers the compiled extension (``gkreceiver._speedups``), falls back to the
pure-Python kernels when the extension was not built.  Set ``GKRECEIVER_PURE``
to a non-empty value other than "0" to force the fallback — used by the
benchmark and the backend-parity tests.
"""

import os

if os.environ.get("GKRECEIVER_PURE", "") not in ("", "0"):
    from . import _pykernels as kernels
else:
    try:
        from . import _speedups as kernels  # type: ignore[no-redef]
    except ImportError:
        from . import _pykernels as kernels  # type: ignore[no-redef]


def backend_name():
    """Which kernel implementation is active: "cython" or "python"."""
    return kernels.IMPL
