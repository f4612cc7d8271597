"""Backend selection for the hot kernels.

The compiled module ``vbq._ckernels`` is used when it imports; otherwise the
pure-Python ``vbq._pykernels`` is used.  Setting ``VBQ_PURE_PYTHON=1`` forces
the fallback.  Both backends expose the same three functions.
"""
from __future__ import annotations

import os

from . import _pykernels
from ._pykernels import (  # noqa: F401  (opcodes are part of the kernel ABI)
    PHI_RHO,
    PHI_SIGMA,
    PHI_SIGMA_INV,
    PSI_RHO,
    PSI_SIGMA,
    PSI_SIGMA_INV,
)

BACKENDS = {"python": _pykernels}
try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None
else:
    BACKENDS["compiled"] = _ckernels

if _ckernels is not None and os.environ.get("VBQ_PURE_PYTHON") != "1":
    BACKEND = "compiled"
else:
    BACKEND = "python"

_impl = BACKENDS[BACKEND]
ybe_violation = _impl.ybe_violation
fixed_points = _impl.fixed_points
search_biquandles = _impl.search_biquandles


def get_backend(name: str | None = None):
    """Return the kernel module for ``name`` (default: the active backend)."""
    return BACKENDS[name or BACKEND]
