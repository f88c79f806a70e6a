"""Backend selection for the straightening kernel.

The compiled extension is preferred when it was built; the pure-Python
implementation is the fallback.  Set PBWHIT_PURE=1 to force the fallback.
"""

import os

if os.environ.get("PBWHIT_PURE"):
    from ._straighten_py import Kernel

    BACKEND = "pure"
else:
    try:
        from ._straighten_c import Kernel  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from ._straighten_py import Kernel  # type: ignore[no-redef]

        BACKEND = "pure"

__all__ = ["Kernel", "BACKEND"]
