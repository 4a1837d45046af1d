"""Finite Alexandrov-Fenchel operators for polygon fans and 3D boxes.

Both constructions present the mixed-volume quadratic form as a weighted
self-adjoint operator normalized so that the reference support vector is
a fixed point (A h = h). The whole spectral chain is then checkable:
the Bochner inequality <Ax,Ax>_p >= <x,Ax>_p forces every eigenvalue into
{1} union (-inf, 0], Perron-Frobenius structure makes the top eigenvalue
1 simple, and one positive eigenvalue yields the reverse Cauchy-Schwarz
inequality for the form.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .exact import InputError, PreconditionError
from .geom import (
    Box,
    PolygonFan,
    SupportVector,
    _fan_gaps,
    edge_lengths,
    validate_fan_angles,
)
from .mixvol import InequalityReport, make_inequality_report
from .spectral import (
    OperatorPair,
    SpectralReport,
    eigh_weighted,
    inertia_from_values,
)

DEFAULT_TOL = 1e-9
BOCHNER_TOL = 1e-12
TOP_ANGLE_TOL = 1e-6
GAP_REL_TOL = 1e-10

# Facet directions of an axis-aligned box in R^3, the fixed direction set
# of the 6x6 operator: (+e1, -e1, +e2, -e2, +e3, -e3).
BOX_DIRECTIONS = (
    (1, 0, 0),
    (-1, 0, 0),
    (0, 1, 0),
    (0, -1, 0),
    (0, 0, 1),
    (0, 0, -1),
)


class NotHyperbolicError(Exception):
    """The operator failed the one-positive-eigenvalue certificate."""

    def __init__(self, report: SpectralReport):
        super().__init__(f"operator is not hyperbolic: inertia {report.inertia}")
        self.report = report


def polygon_form_matrix(fan_or_angles) -> np.ndarray:
    """Symmetric matrix M of the mixed-area form: x^T M y = mixed_area(x, y).

    Built from the edge-length coefficients, so M depends on the fan
    directions only. Its kernel contains the two translation support
    vectors; exactly one eigenvalue is positive.
    """
    if isinstance(fan_or_angles, PolygonFan):
        angles = fan_or_angles.angles
    else:
        angles = validate_fan_angles(fan_or_angles)
    m = len(angles)
    gaps = _fan_gaps(angles)
    M = np.zeros((m, m))
    for i in range(m):
        g_prev = gaps[i]
        g_next = gaps[(i + 1) % m]
        M[i, i - 1] += 0.5 / math.sin(g_prev)
        M[i, (i + 1) % m] += 0.5 / math.sin(g_next)
        M[i, i] -= 0.5 * (1.0 / math.tan(g_prev) + 1.0 / math.tan(g_next))
    return M


def fan_af_operator(fan: PolygonFan) -> OperatorPair:
    """Normalized mixed-area operator of a simple fan polygon.

    With reference support r (all values positive, all edge lengths
    positive), the operator (Ax)_u = r_u * edge_u(x) / edge_u(r) with
    weights p_u = edge_u(r) / (2 r_u) satisfies A r = r and
    <x, A y>_p = mixed_area(x, y).
    """
    r = np.array([float(v) for v in fan.support])
    if r.min() <= 0:
        raise PreconditionError(
            "reference support must be positive everywhere; translate the "
            "polygon so the origin is interior"
        )
    if not fan.is_simple():
        raise PreconditionError("reference polygon must have all edges positive")
    lengths = np.array(edge_lengths(fan))
    E = 2.0 * polygon_form_matrix(fan.angles)
    A = (r / lengths)[:, None] * E
    p = lengths / (2.0 * r)
    return OperatorPair(A, p)


def box_support_vector(box: Box) -> SupportVector:
    """Support values of a box on the six facet directions, exact."""
    if box.dim != 3:
        raise InputError("the box operator lives in R^3")
    values = []
    for i in range(3):
        values.append(box.anchor[i] + box.sides[i])
        values.append(-box.anchor[i])
    return SupportVector(values)


def translation_support_vectors(dim: int = 3) -> list:
    """Support vectors of the point bodies {e_i}: the translation kernel."""
    out = []
    for i in range(dim):
        v = [Fraction(0)] * (2 * dim)
        v[2 * i] = Fraction(1)
        v[2 * i + 1] = Fraction(-1)
        out.append(SupportVector(v))
    return out


def box_af_operator(reference: Box) -> OperatorPair:
    """The 6x6 normalized operator of a positive-support box in R^3.

    Row u of A maps a support vector x to
    h_ref(u) * mixed_area(face of x, face of ref at u) / area(face of ref at u);
    faces of axis boxes are rectangles, so the 2D mixed areas are the
    closed form (a1*b2 + a2*b1)/2. All entries and weights are exact
    rationals, A h_ref = h_ref exactly, and p_u A_uv = p_v A_vu exactly.
    """
    if reference.dim != 3:
        raise InputError("the box operator lives in R^3")
    sides = reference.sides
    if any(s <= 0 for s in sides):
        raise PreconditionError("reference box must have positive sides")
    h = box_support_vector(reference).values
    if any(v <= 0 for v in h):
        raise PreconditionError(
            "reference box must have positive support on all six directions; "
            "re-center it (e.g. Box.centered()) so the origin is interior"
        )
    matrix = []
    weights = []
    for axis in range(3):
        others = [k for k in range(3) if k != axis]
        face_area = sides[others[0]] * sides[others[1]]
        for sign_slot in range(2):
            u = 2 * axis + sign_slot
            row = [Fraction(0)] * 6
            for j in others:
                coeff = h[u] / (2 * sides[j])
                row[2 * j] = coeff
                row[2 * j + 1] = coeff
            matrix.append(row)
            weights.append(face_area / (3 * h[u]))
    return OperatorPair(matrix, weights)


@dataclass(frozen=True)
class BochnerReport:
    """Sampled check of <Ax,Ax>_p >= <x,Ax>_p.

    ``eigen_residual_min`` evaluates the residual on the p-orthonormal
    eigenbasis (where it equals lambda^2 - lambda termwise);
    ``expansion_max_dev`` is the internal-consistency gap between the
    direct residual and its spectral expansion sum((l^2-l) c^2);
    ``oracle_max_dev`` compares <x,Ax>_p against an independently supplied
    quadratic-form oracle.
    """

    min_residual: float
    verdict: bool
    eigen_residual_min: float
    expansion_max_dev: float
    oracle_max_dev: Optional[float]
    samples: int


def bochner_check(
    op: OperatorPair,
    quad_oracle: Optional[Callable] = None,
    samples: int = 10000,
    seed: int = 0,
    tol: float = BOCHNER_TOL,
) -> BochnerReport:
    """Minimum of <Ax,Ax>_p - <x,Ax>_p over random x and the eigenbasis."""
    A = op.matrix
    p = op.weights
    n = op.dim
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((samples, n))
    norms = np.sqrt(np.einsum("ij,ij,j->i", X, X, p))
    X /= norms[:, None]
    AX = X @ A.T
    quad_upper = np.einsum("ij,ij,j->i", AX, AX, p)
    quad_lower = np.einsum("ij,ij,j->i", X, AX, p)
    residuals = quad_upper - quad_lower
    min_residual = float(residuals.min()) if samples else math.inf

    w, V = eigh_weighted(op)
    AV = V.T @ A.T
    eig_upper = np.einsum("ij,ij,j->i", AV, AV, p)
    eig_lower = np.einsum("ij,ij,j->i", V.T, AV, p)
    eigen_residual_min = float((eig_upper - eig_lower).min())
    min_residual = min(min_residual, eigen_residual_min)

    # Spectral expansion consistency on a slice of the samples.
    k = min(64, samples)
    expansion_max_dev = 0.0
    if k:
        coords = (X[:k] * p[None, :]) @ V
        spectral = coords**2 @ (w * w - w)
        expansion_max_dev = float(np.abs(spectral - residuals[:k]).max())

    oracle_max_dev = None
    if quad_oracle is not None and k:
        devs = [
            abs(float(quad_oracle(X[i])) - float(quad_lower[i])) for i in range(k)
        ]
        oracle_max_dev = max(devs)

    return BochnerReport(
        min_residual=min_residual,
        verdict=bool(min_residual >= -tol),
        eigen_residual_min=eigen_residual_min,
        expansion_max_dev=expansion_max_dev,
        oracle_max_dev=oracle_max_dev,
        samples=samples,
    )


def spectrum_report(
    op: OperatorPair,
    reference=None,
    samples: int = 10000,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    zero_rel_tol: Optional[float] = None,
) -> SpectralReport:
    """Full spectral verdict for an operator pair.

    Hyperbolic means exactly one positive eigenvalue. ``dichotomy_ok``
    checks every eigenvalue against (-inf, tol] union [1-tol, 1+tol];
    ``top_aligned`` compares the top eigenvector with a reference support
    vector (angle below 1e-6), when one is given. ``zero_rel_tol``
    overrides the inertia zero band (relative to the spectral radius).
    """
    w, V = eigh_weighted(op)
    if zero_rel_tol is None:
        counts = inertia_from_values(w)
    else:
        counts = inertia_from_values(w, rel_tol=zero_rel_tol)
    top = V[:, 0]
    if top[np.argmax(np.abs(top))] < 0:
        top = -top
    radius = max(1.0, float(np.abs(w).max(initial=0.0)))
    simple_top = bool(op.dim == 1 or (w[0] - w[1]) > GAP_REL_TOL * radius)
    dichotomy_ok = bool(np.all((w <= tol) | (np.abs(w - 1.0) <= tol)))
    top_aligned = None
    top_angle = None
    if reference is not None:
        ref = np.array([float(v) for v in reference])
        cosine = abs(float(ref @ top)) / (
            float(np.linalg.norm(ref)) * float(np.linalg.norm(top))
        )
        top_angle = float(math.acos(min(1.0, cosine)))
        top_aligned = bool(top_angle <= TOP_ANGLE_TOL)
    bochner = bochner_check(op, samples=samples, seed=seed)
    return SpectralReport(
        eigenvalues=tuple(float(x) for x in w),
        inertia=counts,
        top_eigenvector=tuple(float(x) for x in top),
        simple_top=simple_top,
        bochner_residual_min=bochner.min_residual,
        verdict="hyperbolic" if counts[0] == 1 else "not_hyperbolic",
        dichotomy_ok=dichotomy_ok,
        top_aligned=top_aligned,
        top_angle=top_angle,
    )


@dataclass(frozen=True)
class SpectralAfReport:
    """Reverse Cauchy-Schwarz conclusion drawn from a spectral certificate."""

    certificate: SpectralReport
    inequality: InequalityReport
    y_in_cone: bool


def verify_af_via_spectrum(
    x,
    y,
    op: OperatorPair,
    reference=None,
    samples: int = 2000,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
) -> SpectralAfReport:
    """Certify hyperbolicity of the operator, then confirm the inequality.

    Raises NotHyperbolicError when the certificate fails; otherwise reports
    <x,Ay>_p^2 >= <x,Ax>_p <y,Ay>_p together with the certificate.
    """
    report = spectrum_report(op, reference=reference, samples=samples, seed=seed, tol=tol)
    if report.verdict != "hyperbolic":
        raise NotHyperbolicError(report)
    xv = np.array([float(v) for v in x])
    yv = np.array([float(v) for v in y])
    if xv.shape != (op.dim,) or yv.shape != (op.dim,):
        raise InputError("support vectors must match the operator dimension")
    ay = op.apply(yv)
    ax = op.apply(xv)
    cross = float(np.sum(xv * ay * op.weights))
    left = float(np.sum(xv * ax * op.weights))
    right = float(np.sum(yv * ay * op.weights))
    inequality = make_inequality_report(cross, left, right, tol)
    y_in_cone = bool(right >= -tol * max(1.0, abs(right)))
    return SpectralAfReport(certificate=report, inequality=inequality, y_in_cone=y_in_cone)
