"""Numerov kernel backend, chosen once at import.

The compiled extension is used when it was built; otherwise (or when
``HBARPDM_PURE_PYTHON`` is set to a non-empty value) the pure-Python
implementation with the same contract is used.
"""

import os

from . import _numerov_py

BACKENDS = {"python": _numerov_py}

try:
    from . import _numerov as _compiled
except ImportError:
    _compiled = None
else:
    BACKENDS["cython"] = _compiled

if _compiled is not None and not os.environ.get("HBARPDM_PURE_PYTHON"):
    BACKEND = "cython"
else:
    BACKEND = "python"

shoot = BACKENDS[BACKEND].shoot
profile = BACKENDS[BACKEND].profile


def get_backend(name=None):
    """Kernel module by name (``"cython"`` or ``"python"``); default is the active one."""
    name = name or BACKEND
    if name not in BACKENDS:
        raise ImportError(f"kernel backend {name!r} is not available (have {sorted(BACKENDS)})")
    return BACKENDS[name]
