"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``HIBILAB_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernels

if os.environ.get("HIBILAB_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

rank = _impl.rank
reduced_betti = _impl.reduced_betti
koszul_betti = _impl.koszul_betti
koszul_faces = _pykernels.koszul_faces


def available_backends():
    """Name -> kernel module for every backend that can be imported."""
    out = {"python": _pykernels}
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        out["cython"] = _kernels
    return out
