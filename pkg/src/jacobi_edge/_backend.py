"""Kernel backend selection.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``JACOBI_EDGE_PURE`` is set to a non-empty value other
than ``0``, the pure-Python twins are used.
"""

import os

from . import _kernels_py

BACKENDS = {"python": _kernels_py}

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None
else:
    BACKENDS["compiled"] = _compiled


def _select():
    flag = os.environ.get("JACOBI_EDGE_PURE", "")
    if _compiled is not None and flag in ("", "0"):
        return "compiled", _compiled
    return "python", _kernels_py


BACKEND_NAME, kernels = _select()


def get_backend(name=None):
    """Kernel module by name ("compiled" or "python"); default is the active one."""
    if name is None:
        return kernels
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}") from None
