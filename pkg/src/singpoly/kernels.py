"""Kernel backend selection.

The compiled backend is used when it imported successfully and the packed
keys of a layout fit in a machine word.  Set ``SINGPOLY_KERNELS=python`` to
force the pure-Python backend.
"""
import os

from singpoly import _pykernels

try:
    from singpoly import _ckernels
except ImportError:  # extension not built
    _ckernels = None

if os.environ.get("SINGPOLY_KERNELS", "").lower() == "python":
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"


def available_backends():
    out = {"python": _pykernels}
    if _ckernels is not None:
        out["cython"] = _ckernels
    return out


def for_layout(layout):
    if _ckernels is not None and layout.fits_word:
        return _ckernels
    return _pykernels
