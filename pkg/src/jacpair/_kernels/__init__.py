"""Polynomial product kernels.

The compiled extension is used when it was built and ``JACPAIR_PURE_PYTHON``
is unset; otherwise the pure-Python implementation is selected.
"""
import os

from . import _pykernels

BACKEND = "python"
if not os.environ.get("JACPAIR_PURE_PYTHON"):
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels
else:
    _impl = _pykernels

convolve = _impl.convolve
sparse_mul = _impl.sparse_mul

__all__ = ["BACKEND", "convolve", "sparse_mul", "_pykernels"]
