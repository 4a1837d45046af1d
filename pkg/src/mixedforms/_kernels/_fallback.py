"""Pure numpy implementations of the hot kernels.

Functionally identical to the Cython extension in ``_core.pyx``; kept in
sync by ``tests/test_kernels.py``. Rotations are applied with vectorized
row/column updates, so the fallback is usable (if slower) up to the
matrix sizes this package targets (n <= 64).
"""

import math

import numpy as np

# Sweep termination: off-diagonal Frobenius mass below this multiple of
# the full Frobenius norm.
OFF_TOLERANCE = 1e-14
MAX_SWEEPS = 100


def jacobi_eigh(S):
    """Diagonalize a symmetric matrix by cyclic Jacobi rotations.

    Returns ``(w, V)`` with unsorted eigenvalues ``w`` and eigenvectors in
    the columns of ``V`` (so ``S @ V[:, k] == w[k] * V[:, k]``). The input
    is not modified. Symmetry is the caller's responsibility.
    """
    A = np.array(S, dtype=np.float64, copy=True)
    n = A.shape[0]
    V = np.eye(n)
    if n < 2:
        return np.diagonal(A).copy(), V
    norm = np.linalg.norm(A)
    if norm == 0.0:
        return np.zeros(n), V
    for _ in range(MAX_SWEEPS):
        off = math.sqrt(2.0 * float(np.sum(np.triu(A, 1) ** 2)))
        if off <= OFF_TOLERANCE * norm:
            return np.diagonal(A).copy(), V
        rot_threshold = OFF_TOLERANCE * norm / (n * n)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= rot_threshold:
                    continue
                diff = A[q, q] - A[p, p]
                if abs(apq) < 1e-36 * abs(diff):
                    t = apq / diff
                else:
                    theta = diff / (2.0 * apq)
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = A[:, p].copy()
                col_q = A[:, q].copy()
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                row_p = A[p, :].copy()
                row_q = A[q, :].copy()
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
                A[p, q] = 0.0
                A[q, p] = 0.0
                col_p = V[:, p].copy()
                col_q = V[:, q].copy()
                V[:, p] = c * col_p - s * col_q
                V[:, q] = s * col_p + c * col_q
    raise ArithmeticError("Jacobi sweeps did not converge")


def det_batch_int64(mats):
    """Exact determinants of a (B, n, n) int64 batch, n <= 4.

    Pure integer arithmetic (cofactor expansion), so results are exact as
    long as the caller keeps entries within the documented overflow bound;
    see ``exact.int64_det_entry_bound``.
    """
    m = np.ascontiguousarray(mats, dtype=np.int64)
    if m.ndim != 3 or m.shape[1] != m.shape[2]:
        raise ValueError("expected a (B, n, n) batch of square matrices")
    n = m.shape[1]
    if n == 1:
        return m[:, 0, 0].copy()
    if n == 2:
        return m[:, 0, 0] * m[:, 1, 1] - m[:, 0, 1] * m[:, 1, 0]
    if n == 3:
        return _det3(m)
    if n == 4:
        out = np.zeros(m.shape[0], dtype=np.int64)
        sign = 1
        for j in range(4):
            cols = [k for k in range(4) if k != j]
            minor = m[:, 1:, :][:, :, cols]
            out += sign * m[:, 0, j] * _det3(minor)
            sign = -sign
        return out
    raise ValueError("det_batch_int64 supports n <= 4")


def _det3(m):
    return (
        m[:, 0, 0] * (m[:, 1, 1] * m[:, 2, 2] - m[:, 1, 2] * m[:, 2, 1])
        - m[:, 0, 1] * (m[:, 1, 0] * m[:, 2, 2] - m[:, 1, 2] * m[:, 2, 0])
        + m[:, 0, 2] * (m[:, 1, 0] * m[:, 2, 1] - m[:, 1, 1] * m[:, 2, 0])
    )
