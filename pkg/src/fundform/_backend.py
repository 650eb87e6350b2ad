"""Select the polynomial kernel implementation at import time.

The compiled extension is used when it was built; otherwise the pure-Python
module is used.  ``FUNDFORM_PURE_PYTHON=1`` forces the fallback.
"""

import os

BACKEND = "python"
kernels = None

if os.environ.get("FUNDFORM_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        kernels = None

if kernels is None:
    from . import _kernels_py as kernels  # type: ignore[no-redef]

__all__ = ["BACKEND", "kernels"]
