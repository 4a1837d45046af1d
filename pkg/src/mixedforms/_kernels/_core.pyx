# cython: language_level=3
"""Compiled hot kernels: cyclic Jacobi eigensolver and batched integer
determinants. Mirrors ``_fallback.py``; both backends are exercised by the
same tests and by ``benchmarks/bench_kernels.py``."""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()

cdef double OFF_TOLERANCE = 1e-14
cdef int MAX_SWEEPS = 100


def jacobi_eigh(S):
    """Diagonalize a symmetric matrix by cyclic Jacobi rotations.

    Returns ``(w, V)`` with unsorted eigenvalues and eigenvector columns;
    the input is left untouched.
    """
    A_arr = np.array(S, dtype=np.float64, copy=True, order="C")
    cdef Py_ssize_t n = A_arr.shape[0]
    V_arr = np.eye(n)
    cdef double[:, ::1] A = A_arr
    cdef double[:, ::1] V = V_arr
    cdef Py_ssize_t p, q, i, sweep
    cdef double norm2 = 0.0, off2, apq, diff, theta, t, c, s, tmp_p, tmp_q
    cdef double norm, rot_threshold

    if n < 2:
        return np.diagonal(A_arr).copy(), V_arr
    for p in range(n):
        for q in range(n):
            norm2 += A[p, q] * A[p, q]
    norm = sqrt(norm2)
    if norm == 0.0:
        return np.zeros(n), V_arr

    for sweep in range(MAX_SWEEPS):
        off2 = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off2 += 2.0 * A[p, q] * A[p, q]
        if sqrt(off2) <= OFF_TOLERANCE * norm:
            return np.diagonal(A_arr).copy(), V_arr
        rot_threshold = OFF_TOLERANCE * norm / (n * n)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if fabs(apq) <= rot_threshold:
                    continue
                diff = A[q, q] - A[p, p]
                if fabs(apq) < 1e-36 * fabs(diff):
                    t = apq / diff
                else:
                    theta = diff / (2.0 * apq)
                    t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                # A <- J^T A J applied as full column then row updates.
                for i in range(n):
                    tmp_p = A[i, p]
                    tmp_q = A[i, q]
                    A[i, p] = c * tmp_p - s * tmp_q
                    A[i, q] = s * tmp_p + c * tmp_q
                for i in range(n):
                    tmp_p = A[p, i]
                    tmp_q = A[q, i]
                    A[p, i] = c * tmp_p - s * tmp_q
                    A[q, i] = s * tmp_p + c * tmp_q
                A[p, q] = 0.0
                A[q, p] = 0.0
                for i in range(n):
                    tmp_p = V[i, p]
                    tmp_q = V[i, q]
                    V[i, p] = c * tmp_p - s * tmp_q
                    V[i, q] = s * tmp_p + c * tmp_q
    raise ArithmeticError("Jacobi sweeps did not converge")


def det_batch_int64(mats):
    """Exact determinants of a (B, n, n) int64 batch, n <= 4."""
    m_arr = np.ascontiguousarray(mats, dtype=np.int64)
    if m_arr.ndim != 3 or m_arr.shape[1] != m_arr.shape[2]:
        raise ValueError("expected a (B, n, n) batch of square matrices")
    cdef Py_ssize_t B = m_arr.shape[0]
    cdef Py_ssize_t n = m_arr.shape[1]
    if n > 4:
        raise ValueError("det_batch_int64 supports n <= 4")
    out_arr = np.empty(B, dtype=np.int64)
    cdef cnp.int64_t[:, :, ::1] m = m_arr
    cdef cnp.int64_t[::1] out = out_arr
    cdef Py_ssize_t b
    for b in range(B):
        if n == 1:
            out[b] = m[b, 0, 0]
        elif n == 2:
            out[b] = m[b, 0, 0] * m[b, 1, 1] - m[b, 0, 1] * m[b, 1, 0]
        elif n == 3:
            out[b] = _det3(m, b, 0, 1, 2, 0, 1, 2)
        else:
            out[b] = (
                m[b, 0, 0] * _det3(m, b, 1, 2, 3, 1, 2, 3)
                - m[b, 0, 1] * _det3(m, b, 1, 2, 3, 0, 2, 3)
                + m[b, 0, 2] * _det3(m, b, 1, 2, 3, 0, 1, 3)
                - m[b, 0, 3] * _det3(m, b, 1, 2, 3, 0, 1, 2)
            )
    return out_arr


cdef inline cnp.int64_t _det3(
    cnp.int64_t[:, :, ::1] m, Py_ssize_t b,
    Py_ssize_t r0, Py_ssize_t r1, Py_ssize_t r2,
    Py_ssize_t c0, Py_ssize_t c1, Py_ssize_t c2,
) noexcept nogil:
    return (
        m[b, r0, c0] * (m[b, r1, c1] * m[b, r2, c2] - m[b, r1, c2] * m[b, r2, c1])
        - m[b, r0, c1] * (m[b, r1, c0] * m[b, r2, c2] - m[b, r1, c2] * m[b, r2, c0])
        + m[b, r0, c2] * (m[b, r1, c0] * m[b, r2, c1] - m[b, r1, c1] * m[b, r2, c0])
    )
