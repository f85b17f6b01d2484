"""Kernel selection: the compiled extension if it imports, numpy otherwise.

Set CUTCOLOR_PURE_PYTHON=1 to force the numpy versions.
"""
import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels
if os.environ.get("CUTCOLOR_PURE_PYTHON") != "1":
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels


def backend(name=None):
    """Return the kernel module by name ("cython" or "python"), or the active one."""
    if name is None:
        return _impl
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _ckernels
        return _ckernels
    raise ValueError(f"unknown kernel backend {name!r}")


echelon_block = _impl.echelon_block
flip_accumulate = _impl.flip_accumulate
canonical_rows = _impl.canonical_rows
