"""Kernel backend selection.

The compiled ``_kernels`` extension is used when it imports; otherwise the
numpy ``_fallback``. Set ``CODEGS_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _fallback

kernels = _fallback
NAME = "python"

if os.environ.get("CODEGS_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None
    if _compiled is not None:
        kernels = _compiled
        NAME = "compiled"


def use(name):
    """Switch the active backend at runtime ("compiled" or "python")."""
    global kernels, NAME
    if name == "python":
        kernels, NAME = _fallback, "python"
    elif name == "compiled":
        from . import _kernels

        kernels, NAME = _kernels, "compiled"
    else:
        raise ValueError(f"unknown backend {name!r}")
