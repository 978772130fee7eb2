"""Hot-kernel backend selection.

The compiled extension (``widomlab.kernels._fast``) is preferred when it
imported cleanly; otherwise the numpy reference (``_pyref``) is used.
Set ``WIDOMLAB_KERNELS=python`` or ``=compiled`` to force a backend
(``compiled`` raises if the extension is missing).
"""

import os

from . import _pyref

_requested = os.environ.get("WIDOMLAB_KERNELS", "auto")

if _requested == "python":
    _impl = _pyref
elif _requested in ("auto", "compiled"):
    try:
        from . import _fast as _impl
    except ImportError:
        if _requested == "compiled":
            raise
        _impl = _pyref
else:
    raise ValueError(f"WIDOMLAB_KERNELS must be auto|python|compiled, got {_requested!r}")

clenshaw = _impl.clenshaw
golden_refine = _impl.golden_refine
BACKEND = _impl.BACKEND

__all__ = ["clenshaw", "golden_refine", "BACKEND"]
