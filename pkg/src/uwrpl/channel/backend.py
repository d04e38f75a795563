"""Kernel backend selection.

Imports the compiled kernels when available, otherwise the pure-Python
reference. Set UWRPL_FORCE_PURE=1 to insist on the fallback (used by the
benchmark and the cross-backend equality tests). Both expose the same
module-level functions with identical numeric results.
"""

import os

if os.environ.get("UWRPL_FORCE_PURE") == "1":
    from . import _kernels as kernels
    BACKEND_NAME = "pure-python"
else:
    try:
        from . import _ckernels as kernels  # type: ignore[no-redef]
        BACKEND_NAME = "compiled"
    except ImportError:
        from . import _kernels as kernels  # type: ignore[no-redef]
        BACKEND_NAME = "pure-python"
