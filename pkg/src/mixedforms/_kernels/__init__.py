"""Numeric hot kernels: compiled Cython core with a pure numpy fallback.

The compiled extension is optional; when it is missing (not built, wrong
platform) the numpy implementation is selected at import time, and setting
MIXEDFORMS_PURE_PYTHON=1 forces the fallback. Both expose the same two
functions:

    jacobi_eigh(S)       -- cyclic Jacobi diagonalization of a symmetric matrix
    det_batch_int64(M)   -- exact determinants of a batch of small int64 matrices

``IMPLEMENTATION`` records which backend won, for diagnostics and for the
benchmark script.
"""

import os

if os.environ.get("MIXEDFORMS_PURE_PYTHON"):
    from . import _fallback as _impl

    IMPLEMENTATION = "python"
else:
    try:
        from . import _core as _impl

        IMPLEMENTATION = "cython"
    except ImportError:
        from . import _fallback as _impl

        IMPLEMENTATION = "python"

jacobi_eigh = _impl.jacobi_eigh
det_batch_int64 = _impl.det_batch_int64

__all__ = ["jacobi_eigh", "det_batch_int64", "IMPLEMENTATION"]
