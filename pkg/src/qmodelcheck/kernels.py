"""Backend selection for the numeric hot loops.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``QMODELCHECK_PURE_PYTHON`` is set to a non-empty
value, the numpy implementations in ``_fallback`` are used. ``BACKEND``
records which one is active.

The compiled loops beat numpy only while call overhead dominates; above
``CUTOVER`` entries the BLAS-backed numpy versions of ``residual`` and
``matvec`` are used regardless of the backend.
"""
import os

import numpy as np

from . import _fallback

if os.environ.get("QMODELCHECK_PURE_PYTHON"):
    _impl = _fallback
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _fallback
        BACKEND = "python"


CUTOVER = 32


def available_backends():
    """Return a dict name -> kernel module for every importable backend."""
    found = {"python": _fallback}
    try:
        from . import _kernels
        found["cython"] = _kernels
    except ImportError:
        pass
    return found


def _c(a):
    return np.ascontiguousarray(a, dtype=np.complex128)


def residual(Q, v):
    """Component of ``v`` orthogonal to the rows of ``Q`` (orthonormal rows)."""
    impl = _impl if len(v) <= CUTOVER else _fallback
    return impl.residual(_c(Q), _c(v))


def residual_norm(Q, v):
    impl = _impl if len(v) <= CUTOVER else _fallback
    return float(impl.residual_norm(_c(Q), _c(v)))


def matvec(U, v):
    impl = _impl if len(v) <= CUTOVER else _fallback
    return impl.matvec(_c(U), _c(v))


def slot_norms(v, nslots):
    return _impl.slot_norms(_c(v), int(nslots))
