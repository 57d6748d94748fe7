# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops: projection residuals, dense complex mat-vec, slot norms.

Every function here has a behaviour-identical twin in ``_fallback``.
"""
import numpy as np

from libc.math cimport sqrt


cdef inline double _abs2(double complex z) nogil:
    return z.real * z.real + z.imag * z.imag


cdef void _residual_inplace(const double complex[:, ::1] Q,
                            double complex[::1] r) noexcept nogil:
    cdef Py_ssize_t k = Q.shape[0]
    cdef Py_ssize_t d = Q.shape[1]
    cdef Py_ssize_t sweep, j, i
    cdef double complex c
    # two modified Gram-Schmidt sweeps
    for sweep in range(2):
        for j in range(k):
            c = 0
            for i in range(d):
                c = c + Q[j, i].conjugate() * r[i]
            for i in range(d):
                r[i] = r[i] - c * Q[j, i]


def residual(const double complex[:, ::1] Q, const double complex[::1] v):
    cdef Py_ssize_t d = v.shape[0]
    out = np.empty(d, dtype=np.complex128)
    cdef double complex[::1] r = out
    cdef Py_ssize_t i
    for i in range(d):
        r[i] = v[i]
    if Q.shape[0]:
        with nogil:
            _residual_inplace(Q, r)
    return out


def residual_norm(const double complex[:, ::1] Q, const double complex[::1] v):
    cdef Py_ssize_t d = v.shape[0]
    cdef double complex[::1] r = np.empty(d, dtype=np.complex128)
    cdef Py_ssize_t i
    cdef double acc = 0.0
    for i in range(d):
        r[i] = v[i]
    with nogil:
        if Q.shape[0]:
            _residual_inplace(Q, r)
        for i in range(d):
            acc = acc + _abs2(r[i])
    return sqrt(acc)


def matvec(const double complex[:, ::1] U, const double complex[::1] v):
    cdef Py_ssize_t n = U.shape[0]
    cdef Py_ssize_t m = U.shape[1]
    if v.shape[0] != m:
        raise ValueError(f"matvec: {n}x{m} matrix against length-{v.shape[0]} vector")
    out = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] w = out
    cdef Py_ssize_t i, j
    cdef double complex acc
    with nogil:
        for i in range(n):
            acc = 0
            for j in range(m):
                acc = acc + U[i, j] * v[j]
            w[i] = acc
    return out


def slot_norms(const double complex[::1] v, Py_ssize_t nslots):
    """Norm of each classical slot when ``v`` is laid out as (d, nslots)."""
    cdef Py_ssize_t n = v.shape[0]
    if nslots <= 0 or n % nslots:
        raise ValueError("vector length is not a multiple of the slot count")
    out = np.zeros(nslots, dtype=np.float64)
    cdef double[::1] acc = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            acc[i % nslots] += _abs2(v[i])
        for i in range(nslots):
            acc[i] = sqrt(acc[i])
    return out
