"""Symmetric spectra: Jacobi eigensolver, inertia, hyperbolic-form and
Perron-Frobenius structure checks.

The eigensolver is the package's own cyclic Jacobi (compiled kernel with a
numpy fallback); weighted operators are reduced to it by the similarity
transform P^(1/2) A P^(-1/2). Hyperbolicity here means: at most one
positive eigenvalue, equivalently the reverse Cauchy-Schwarz inequality
<x,Ay>^2 >= <x,Ax><y,Ay> on the cone <y,Ay> >= 0.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from ._kernels import jacobi_eigh
from .exact import InputError, PreconditionError, is_exact

SYMMETRY_TOL = 1e-10
INERTIA_REL_TOL = 1e-8
GAP_REL_TOL = 1e-10


def _entries_exact(rows) -> bool:
    return all(is_exact(x) for row in rows for x in row)


def _to_rows(matrix):
    if isinstance(matrix, np.ndarray):
        return None
    rows = [list(r) for r in matrix]
    if any(len(r) != len(rows) for r in rows):
        raise InputError("matrix must be square")
    return rows


@dataclass(frozen=True)
class OperatorPair:
    """A matrix self-adjoint in the weighted inner product sum(x*y*p).

    ``matrix_exact``/``weights_exact`` keep the rational data when the
    pair was built exactly (box and diagonal operators), so identities
    like A*h = h can be tested as rational equalities.
    """

    matrix: np.ndarray
    weights: np.ndarray
    matrix_exact: Optional[tuple]
    weights_exact: Optional[tuple]

    def __init__(self, matrix, weights):
        rows = _to_rows(matrix)
        weights_list = list(weights)
        exact = (
            rows is not None
            and _entries_exact(rows)
            and all(is_exact(w) for w in weights_list)
        )
        a = np.asarray(matrix, dtype=np.float64)
        p = np.asarray(weights_list, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InputError("operator matrix must be square")
        if p.shape != (a.shape[0],):
            raise InputError("weight vector length must match the matrix")
        if np.any(p <= 0):
            raise InputError("weights must be strictly positive")
        pa = p[:, None] * a
        scale = max(1.0, np.abs(pa).max())
        if np.abs(pa - pa.T).max() > SYMMETRY_TOL * scale:
            raise InputError("matrix is not self-adjoint for these weights")
        a.setflags(write=False)
        p.setflags(write=False)
        object.__setattr__(self, "matrix", a)
        object.__setattr__(self, "weights", p)
        object.__setattr__(
            self,
            "matrix_exact",
            tuple(tuple(Fraction(x) for x in r) for r in rows) if exact else None,
        )
        object.__setattr__(
            self,
            "weights_exact",
            tuple(Fraction(w) for w in weights_list) if exact else None,
        )

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def inner(self, x, y) -> float:
        """Weighted inner product sum_i x_i y_i p_i."""
        return float(np.sum(np.asarray(x) * np.asarray(y) * self.weights))

    def apply(self, x) -> np.ndarray:
        return self.matrix @ np.asarray(x, dtype=np.float64)


MatrixLike = Union[np.ndarray, Sequence, OperatorPair]


@dataclass(frozen=True)
class SpectralReport:
    """Spectral verdict for an operator pair.

    ``verdict`` is "hyperbolic" when the positive eigenspace is exactly
    one-dimensional. ``dichotomy_ok`` records whether every eigenvalue sits
    in (-inf, tol] or [1-tol, 1+tol]; ``top_aligned`` whether the top
    eigenvector is parallel to the supplied reference vector (None when no
    reference was given).
    """

    eigenvalues: tuple
    inertia: tuple
    top_eigenvector: tuple
    simple_top: bool
    bochner_residual_min: float
    verdict: str
    dichotomy_ok: bool
    top_aligned: Optional[bool]
    top_angle: Optional[float]


def eigh(S, check_symmetry: bool = True):
    """Eigenvalues (descending) and orthonormal eigenvector columns of S."""
    a = np.asarray(S, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputError("eigh needs a square matrix")
    scale = max(1.0, np.abs(a).max(initial=0.0))
    if check_symmetry and np.abs(a - a.T).max(initial=0.0) > SYMMETRY_TOL * scale:
        raise InputError("matrix is not symmetric")
    w, v = jacobi_eigh((a + a.T) / 2.0)
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def eigh_weighted(op: OperatorPair):
    """Eigenpairs of an operator pair; eigenvectors are p-orthonormal.

    Uses the similarity P^(1/2) A P^(-1/2), which is plain-symmetric
    exactly when the pair is self-adjoint on l2(p).
    """
    sqrtp = np.sqrt(op.weights)
    b = sqrtp[:, None] * op.matrix / sqrtp[None, :]
    w, v = eigh(b, check_symmetry=False)
    return w, v / sqrtp[:, None]


def _eigenvalues(target: MatrixLike):
    if isinstance(target, OperatorPair):
        return eigh_weighted(target)
    return eigh(target)


def inertia_from_values(w, zero_tol: Optional[float] = None, rel_tol: float = INERTIA_REL_TOL):
    """Counts (n_pos, n_zero, n_neg) for a set of eigenvalues.

    The zero band half-width defaults to rel_tol * spectral radius.
    """
    w = np.asarray(w, dtype=np.float64)
    radius = float(np.abs(w).max(initial=0.0))
    band = float(zero_tol) if zero_tol is not None else rel_tol * radius
    n_pos = int(np.sum(w > band))
    n_neg = int(np.sum(w < -band))
    return (n_pos, len(w) - n_pos - n_neg, n_neg)


def inertia(target: MatrixLike, zero_tol: Optional[float] = None, rel_tol: float = INERTIA_REL_TOL):
    """Inertia of a symmetric matrix or operator pair."""
    w, _ = _eigenvalues(target)
    return inertia_from_values(w, zero_tol=zero_tol, rel_tol=rel_tol)


@dataclass(frozen=True)
class HyperbolicityReport:
    verdict: str
    inertia: tuple
    min_residual: float
    samples_used: int
    witness: Optional[tuple]
    witness_residual: Optional[float]


def _quad_forms(A, p, X, Y):
    """<x,Ay>, <x,Ax>, <y,Ay> for row-stacked samples, weighted by p."""
    AX = X @ A.T
    AY = Y @ A.T
    if p is None:
        q_xy = np.einsum("ij,ij->i", X, AY)
        q_xx = np.einsum("ij,ij->i", X, AX)
        q_yy = np.einsum("ij,ij->i", Y, AY)
    else:
        q_xy = np.einsum("ij,ij->i", X * p, AY)
        q_xx = np.einsum("ij,ij->i", X * p, AX)
        q_yy = np.einsum("ij,ij->i", Y * p, AY)
    return q_xy, q_xx, q_yy


def hyperbolicity_check(
    target: MatrixLike,
    samples: int = 10000,
    rng_seed: int = 0,
    zero_rel_tol: float = INERTIA_REL_TOL,
) -> HyperbolicityReport:
    """Reverse Cauchy-Schwarz check for a symmetric matrix or operator pair.

    The verdict comes from the inertia (at most one positive eigenvalue).
    Random pairs (x, y) with <y,Ay> >= 0 probe the inequality itself and
    the minimal residual <x,Ay>^2 - <x,Ax><y,Ay> is reported; when two or
    more positive eigenvalues exist, the top two eigenvectors form a
    certified violation pair.
    """
    if isinstance(target, OperatorPair):
        A = target.matrix
        p = target.weights
    else:
        a = np.asarray(target, dtype=np.float64)
        scale = max(1.0, np.abs(a).max(initial=0.0))
        if np.abs(a - a.T).max(initial=0.0) > SYMMETRY_TOL * scale:
            raise InputError("matrix is not symmetric")
        A = (a + a.T) / 2.0
        p = None
    w, v = _eigenvalues(target)
    n = A.shape[0]
    n_pos, n_zero, n_neg = inertia_from_values(w, rel_tol=zero_rel_tol)
    verdict = "hyperbolic" if n_pos <= 1 else "not_hyperbolic"

    witness = None
    witness_residual = None
    if n_pos >= 2:
        x = v[:, 0]
        y = v[:, 1]
        q_xy, q_xx, q_yy = _quad_forms(A, p, x[None, :], y[None, :])
        witness = (tuple(float(t) for t in x), tuple(float(t) for t in y))
        witness_residual = float(q_xy[0] ** 2 - q_xx[0] * q_yy[0])

    rng = np.random.default_rng(rng_seed)
    X = rng.standard_normal((samples, n))
    Y = rng.standard_normal((samples, n))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    Y /= np.linalg.norm(Y, axis=1, keepdims=True)
    q_xy, q_xx, q_yy = _quad_forms(A, p, X, Y)
    # The residual is symmetric in (x, y), so a draw qualifies when either
    # quadratic lands in the nonnegative cone.
    usable = (q_yy >= 0) | (q_xx >= 0)
    if not np.all(usable) and w[0] > 0:
        # Pull unusable draws toward the top eigenvector to enter the cone.
        bad = ~usable
        Y2 = Y[bad] * 0.3 + v[:, 0][None, :]
        q_xy_b, q_xx_b, q_yy_b = _quad_forms(A, p, X[bad], Y2)
        ok = q_yy_b >= 0
        q_xy = np.concatenate([q_xy[usable], q_xy_b[ok]])
        q_xx = np.concatenate([q_xx[usable], q_xx_b[ok]])
        q_yy = np.concatenate([q_yy[usable], q_yy_b[ok]])
    else:
        q_xy = q_xy[usable]
        q_xx = q_xx[usable]
        q_yy = q_yy[usable]
    residuals = q_xy**2 - q_xx * q_yy
    used = int(residuals.size)
    min_residual = float(residuals.min()) if used else math.inf
    return HyperbolicityReport(
        verdict=verdict,
        inertia=(n_pos, n_zero, n_neg),
        min_residual=min_residual,
        samples_used=used,
        witness=witness,
        witness_residual=witness_residual,
    )


@dataclass(frozen=True)
class PerronReport:
    irreducible: bool
    top_simple: bool
    top_vector_positive: bool
    top_eigenvalue: float
    top_vector: tuple


def perron_check(A, p=None, offdiag_tol: float = 1e-10) -> PerronReport:
    """Perron-Frobenius structure of a matrix with nonnegative off-diagonal.

    Irreducibility is graph reachability on the off-diagonal support; top
    eigenvalue simplicity is a relative spectral gap on A + cI with c
    large enough to make the shifted matrix entrywise nonnegative.
    """
    a = np.asarray(A, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputError("perron_check needs a square matrix")
    n = a.shape[0]
    scale = max(1.0, np.abs(a).max(initial=0.0))
    off = a - np.diag(np.diagonal(a))
    if off.min(initial=0.0) < -offdiag_tol * scale:
        raise PreconditionError("matrix has a negative off-diagonal entry")

    support = np.abs(off) > offdiag_tol * scale
    reach = _reachable(support, 0)
    reach_t = _reachable(support.T, 0)
    irreducible = bool(reach.all() and reach_t.all())

    target: MatrixLike
    if p is not None:
        target = OperatorPair(a, p)
    else:
        target = a
    w, v = _eigenvalues(target)
    c = float(np.abs(np.diagonal(a)).max(initial=0.0)) + 1.0
    shifted_radius = max(abs(w[0] + c), abs(w[-1] + c))
    top_simple = bool(n == 1 or (w[0] - w[1]) > GAP_REL_TOL * shifted_radius)
    top = v[:, 0]
    flip = top[np.argmax(np.abs(top))]
    if flip < 0:
        top = -top
    top_vector_positive = bool(top.min() > offdiag_tol * np.abs(top).max())
    return PerronReport(
        irreducible=irreducible,
        top_simple=top_simple,
        top_vector_positive=top_vector_positive,
        top_eigenvalue=float(w[0]),
        top_vector=tuple(float(t) for t in top),
    )


def _reachable(support: np.ndarray, start: int) -> np.ndarray:
    n = support.shape[0]
    seen = np.zeros(n, dtype=bool)
    seen[start] = True
    stack = [start]
    while stack:
        i = stack.pop()
        for j in np.nonzero(support[i])[0]:
            if not seen[j]:
                seen[j] = True
                stack.append(int(j))
    return seen
