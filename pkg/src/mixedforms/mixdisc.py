"""Mixed discriminants and their calculus.

The one evaluation path is polarization: D(M_1,...,M_m) is the alternating
sum of det(sum of a subset) over the 2^m subsets, divided by m!. Rational
input stays exact (denominator clearing + fraction-free determinants);
float input is batched through numpy determinants.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .exact import (
    InputError,
    PreconditionError,
    Scalar,
    clear_denominators_matrix,
    int_det,
    is_exact,
)
from .mixvol import InequalityReport, make_inequality_report
from .spectral import OperatorPair, eigh

DEFAULT_TOL = 1e-9
FLOAT_SYMMETRY_TOL = 1e-12
PSD_EIG_TOL = 1e-10
MAX_POLARIZATION_DIM = 16


def _normalize_matrix(mat, what="matrix"):
    """Returns (rows or None, float array). rows is None for float data."""
    if isinstance(mat, np.ndarray):
        rows = None
        arr = np.asarray(mat, dtype=np.float64)
    else:
        rows = [list(r) for r in mat]
        if any(len(r) != len(rows) for r in rows):
            raise InputError(f"{what} must be square")
        if all(is_exact(x) for r in rows for x in r):
            arr = np.array([[float(x) for x in r] for r in rows])
        else:
            rows = None
            arr = np.asarray([[float(x) for x in r] for r in mat], dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InputError(f"{what} must be square")
    return rows, arr


def _check_symmetric(rows, arr, what="matrix"):
    if rows is not None:
        k = len(rows)
        for i in range(k):
            for j in range(i + 1, k):
                if rows[i][j] != rows[j][i]:
                    raise InputError(f"{what} is not symmetric")
    else:
        scale = max(1.0, float(np.abs(arr).max(initial=0.0)))
        if np.abs(arr - arr.T).max(initial=0.0) > FLOAT_SYMMETRY_TOL * scale:
            raise InputError(f"{what} is not symmetric")


def _prepare_list(mats, expect_count: Optional[int] = None):
    mats = list(mats)
    if not mats:
        raise InputError("need at least one matrix")
    parsed = [_normalize_matrix(m, f"matrix {k}") for k, m in enumerate(mats)]
    m = parsed[0][1].shape[0]
    for k, (rows, arr) in enumerate(parsed):
        if arr.shape[0] != m:
            raise InputError("matrices must share one dimension")
        _check_symmetric(rows, arr, f"matrix {k}")
    if expect_count is not None and len(mats) != expect_count:
        raise InputError(f"need exactly {expect_count} matrices of dimension {m}")
    exact = all(rows is not None for rows, _ in parsed)
    return parsed, m, exact


def mixed_discriminant(mats: Sequence) -> Scalar:
    """Mixed discriminant of m symmetric m x m matrices by polarization.

    Exact rational when every entry is rational.
    """
    parsed, m, exact = _prepare_list(mats, expect_count=None)
    if len(parsed) != m:
        raise InputError(f"need exactly {m} matrices of dimension {m}")
    if m > MAX_POLARIZATION_DIM:
        raise InputError(f"polarization limited to dimension {MAX_POLARIZATION_DIM}")
    if exact:
        cleared = [clear_denominators_matrix(rows) for rows, _ in parsed]
        scale = math.prod(d for _, d in cleared)
        total = 0
        for mask in range(1, 1 << m):
            acc = [[0] * m for _ in range(m)]
            for k in range(m):
                if mask >> k & 1:
                    mk = cleared[k][0]
                    for i in range(m):
                        row = mk[i]
                        ai = acc[i]
                        for j in range(m):
                            ai[j] += row[j]
            sign = -1 if (m - mask.bit_count()) % 2 else 1
            total += sign * int_det(acc)
        return Fraction(total, math.factorial(m) * scale)
    stack = np.stack([arr for _, arr in parsed])
    masks = np.array(
        [[mask >> k & 1 for k in range(m)] for mask in range(1, 1 << m)],
        dtype=np.float64,
    )
    sums = np.tensordot(masks, stack, axes=(1, 0))
    dets = np.linalg.det(sums)
    signs = np.array(
        [-1.0 if (m - mask.bit_count()) % 2 else 1.0 for mask in range(1, 1 << m)]
    )
    return float(signs @ dets) / math.factorial(m)


def _minor(rows, i: int):
    return [
        [x for j, x in enumerate(row) if j != i]
        for k, row in enumerate(rows)
        if k != i
    ]


def _matrix_rows(mat) -> list:
    rows, arr = _normalize_matrix(mat)
    return rows if rows is not None else arr.tolist()


def md_minor_identity(i: int, mats: Sequence):
    """Both sides of the rank-one reduction identity.

    For m-dimensional symmetric matrices M_2,...,M_m and the coordinate
    projector E_i = e_i e_i^T:

        D(E_i, M_2,...,M_m)  ==  D(M_2^(i),...,M_m^(i)) / m

    where M^(i) deletes row and column i. The index is 0-based. Returns
    (lhs, rhs).
    """
    mat_rows = [_matrix_rows(m) for m in mats]
    if not mat_rows:
        raise InputError("need at least one matrix")
    m = len(mat_rows[0])
    if m < 2:
        raise InputError("minor identity needs dimension >= 2")
    if len(mat_rows) != m - 1:
        raise InputError(f"need exactly {m - 1} matrices of dimension {m}")
    if not 0 <= i < m:
        raise InputError(f"index {i} out of range for dimension {m}")
    exact = all(is_exact(x) for rows in mat_rows for r in rows for x in r)
    one = Fraction(1) if exact else 1.0
    zero = Fraction(0) if exact else 0.0
    projector = [[one if (r == i and c == i) else zero for c in range(m)] for r in range(m)]
    lhs = mixed_discriminant([projector, *mat_rows])
    minors = [_minor(rows, i) for rows in mat_rows]
    rhs = mixed_discriminant(minors) / m
    return lhs, rhs


def _spectral_floor(mat) -> float:
    """Smallest eigenvalue relative to the spectral radius."""
    _, arr = _normalize_matrix(mat)
    w, _ = eigh((arr + arr.T) / 2.0)
    radius = float(np.abs(w).max(initial=0.0))
    lo = float(w.min(initial=0.0))
    return lo / radius if radius > 0 else 0.0


def is_psd(mat) -> bool:
    """Positive semidefinite up to eigenvalue >= -1e-10 * spectral radius."""
    return _spectral_floor(mat) >= -PSD_EIG_TOL


def is_pd(mat) -> bool:
    """Strictly positive definite (all eigenvalues clear of the zero band)."""
    _, arr = _normalize_matrix(mat)
    if arr.shape[0] == 0:
        return True
    w, _ = eigh((arr + arr.T) / 2.0)
    radius = float(np.abs(w).max(initial=0.0))
    return bool(radius > 0 and w.min() > PSD_EIG_TOL * radius)


def verify_alexandrov(A, B, Ms: Sequence = (), tol: float = DEFAULT_TOL) -> InequalityReport:
    """Check D(A,B,Ms)^2 >= D(A,A,Ms) * D(B,B,Ms).

    Requires B and every reference matrix positive semidefinite (the
    inequality does not hold for arbitrary B); A only needs symmetry.
    """
    Ms = list(Ms)
    if not is_psd(B):
        raise PreconditionError("B must be positive semidefinite")
    for k, M in enumerate(Ms):
        if not is_psd(M):
            raise PreconditionError(f"reference matrix {k} must be positive semidefinite")
    cross = mixed_discriminant([A, B, *Ms])
    left = mixed_discriminant([A, A, *Ms])
    right = mixed_discriminant([B, B, *Ms])
    return make_inequality_report(cross, left, right, tol)


def diagonal_operator(dim: int, mats: Sequence = ()) -> OperatorPair:
    """Normalized operator of the diagonal-restriction quadratic form.

    For positive definite references M_2,...,M_{n-2} (that is, n-3
    matrices in dimension n = dim), the quadratic form
    Q(x, y) = D(diag(x), diag(y), I, M_2,...,M_{n-2}) equals
    <x, A y> in the weighted inner product with

        (A y)_i = D(diag(y)^(i), I^(i), M_2^(i), ...) /
                  D(I^(i), I^(i), M_2^(i), ...),
        p_i     = D(I^(i), I^(i), M_2^(i), ...) / n.

    A is assembled column-by-column from basis vectors; A @ ones == ones
    by construction, and all data stays rational when the references are.
    """
    n = int(dim)
    if n < 3:
        raise InputError("diagonal operator needs dimension >= 3")
    mats = list(mats)
    if len(mats) != n - 3:
        raise InputError(f"need exactly {n - 3} reference matrices for dimension {n}")
    mat_rows = []
    for k, M in enumerate(mats):
        rows = _matrix_rows(M)
        if len(rows) != n:
            raise InputError(f"reference matrix {k} must be {n} x {n}")
        if not is_pd(M):
            raise PreconditionError(f"reference matrix {k} must be positive definite")
        mat_rows.append(rows)
    exact = all(is_exact(x) for rows in mat_rows for r in rows for x in r)
    one = Fraction(1) if exact else 1.0
    zero = Fraction(0) if exact else 0.0

    def unit_diag(size, j):
        return [[one if (r == j and c == j) else zero for c in range(size)] for r in range(size)]

    identity = [[one if r == c else zero for c in range(n - 1)] for r in range(n - 1)]
    matrix = []
    weights = []
    for i in range(n):
        minors = [_minor(rows, i) for rows in mat_rows]
        denom = mixed_discriminant([identity, identity, *minors])
        if denom <= 0:
            raise PreconditionError("reference family is degenerate")
        row = []
        for j in range(n):
            if j == i:
                row.append(zero)
                continue
            jj = j if j < i else j - 1
            numer = mixed_discriminant([unit_diag(n - 1, jj), identity, *minors])
            row.append(numer / denom)
        matrix.append(row)
        weights.append(denom / n)
    return OperatorPair(matrix, weights)


@dataclass(frozen=True)
class TraceIdentityReport:
    """The two trace identities for one symmetric matrix.

    d1: D(A, I,...,I) == Tr[A] / k
    d2: D(A, A, I,...,I) == (Tr[A]^2 - Tr[A^2]) / (k (k-1))
    with k the matrix dimension. Both must agree exactly on rational input.
    """

    d1_lhs: Scalar
    d1_rhs: Scalar
    d2_lhs: Scalar
    d2_rhs: Scalar

    def exact_match(self) -> bool:
        return self.d1_lhs == self.d1_rhs and self.d2_lhs == self.d2_rhs


def trace_identities(A) -> TraceIdentityReport:
    """Evaluate both sides of the first- and second-order trace identities."""
    rows = _matrix_rows(A)
    k = len(rows)
    if k < 2:
        raise InputError("trace identities need dimension >= 2")
    exact = all(is_exact(x) for r in rows for x in r)
    one = Fraction(1) if exact else 1.0
    zero = Fraction(0) if exact else 0.0
    identity = [[one if r == c else zero for c in range(k)] for r in range(k)]
    trace = sum(rows[i][i] for i in range(k))
    trace_sq = sum(rows[i][j] * rows[j][i] for i in range(k) for j in range(k))
    d1_lhs = mixed_discriminant([rows] + [identity] * (k - 1))
    d2_lhs = mixed_discriminant([rows, rows] + [identity] * (k - 2))
    if exact:
        d1_rhs = Fraction(trace, k)
        d2_rhs = Fraction(trace * trace - trace_sq, k * (k - 1))
    else:
        d1_rhs = float(trace) / k
        d2_rhs = float(trace * trace - trace_sq) / (k * (k - 1))
    return TraceIdentityReport(d1_lhs=d1_lhs, d1_rhs=d1_rhs, d2_lhs=d2_lhs, d2_rhs=d2_rhs)
