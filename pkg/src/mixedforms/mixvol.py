"""Mixed volumes by closed-form engines and a polarization oracle.

Engines: permanents for boxes, generator determinant sums for zonotopes,
edge-length forms for polygon fans. The inclusion-exclusion polarization
identity over Minkowski subset sums serves as the single ground-truth
oracle; it is exact over rationals, so engine/oracle agreement is tested
as rational equality.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

import numpy as np

from ._kernels import det_batch_int64
from .exact import (
    InputError,
    Scalar,
    det_batch_exact,
    int64_det_entry_bound,
    is_exact,
    permanent,
)
from .geom import (
    Box,
    ConvexBody,
    PolygonFan,
    SupportVector,
    Zonotope,
    box_as_zonotope,
    edge_lengths,
    minkowski_combine,
    validate_fan_angles,
    volume,
)

DEFAULT_TOL = 1e-9

# The polarization oracle evaluates 2^n subset volumes.
ORACLE_MAX_BODIES = 20


@dataclass(frozen=True)
class InequalityReport:
    """Outcome of a squared-mixed-form inequality check.

    ``verdict`` is True when lhs >= rhs - tol*scale with
    scale = max(|lhs|, |rhs|, 1); ``equality`` flags |lhs - rhs| within
    the same tolerance. Exact (rational) inputs give exact lhs/rhs.
    """

    lhs: Scalar
    rhs: Scalar
    gap: Scalar
    verdict: bool
    equality: bool
    exact: bool
    cross: Scalar
    left_square: Scalar
    right_square: Scalar


def make_inequality_report(cross, left_square, right_square, tol) -> InequalityReport:
    lhs = cross * cross
    rhs = left_square * right_square
    exact = is_exact(lhs) and is_exact(rhs)
    scale = max(abs(lhs), abs(rhs), 1)
    slack = Fraction(tol) * scale if exact else tol * float(scale)
    gap = lhs - rhs
    return InequalityReport(
        lhs=lhs,
        rhs=rhs,
        gap=gap,
        verdict=bool(gap >= -slack),
        equality=bool(abs(gap) <= slack),
        exact=exact,
        cross=cross,
        left_square=left_square,
        right_square=right_square,
    )


def mixed_volume_boxes(boxes: Sequence[Box]) -> Fraction:
    """Mixed volume of n axis-aligned boxes in R^n: permanent(sides)/n!."""
    boxes = list(boxes)
    n = boxes[0].dim
    if any(b.dim != n for b in boxes):
        raise InputError("boxes must share a dimension")
    if len(boxes) != n:
        raise InputError(f"need exactly {n} boxes in R^{n}, got {len(boxes)}")
    rows = [list(b.sides) for b in boxes]
    return Fraction(permanent(rows), math.factorial(n))


def mixed_volume_zonotopes(zons: Sequence[Zonotope]) -> Fraction:
    """Mixed volume of n zonotopes: sum of |det| over generator choices / n!."""
    zons = list(zons)
    n = zons[0].dim
    if any(z.dim != n for z in zons):
        raise InputError("zonotopes must share a dimension")
    if len(zons) != n:
        raise InputError(f"need exactly {n} zonotopes in R^{n}, got {len(zons)}")
    cleared = []
    scale = 1
    count = 1
    for z in zons:
        d = 1
        for g in z.generators:
            for x in g:
                d = d * x.denominator // math.gcd(d, x.denominator)
        cleared.append([[int(x * d) for x in g] for g in z.generators])
        scale *= d
        count *= len(z.generators)
    if count == 0:
        return Fraction(0)
    if count * n * n > 5_000_000:
        raise InputError("zonotope generator product too large for exact expansion")
    max_abs = max((abs(x) for body in cleared for g in body for x in g), default=0)
    if n <= 4 and max_abs <= int64_det_entry_bound(n):
        grids = np.meshgrid(*[np.arange(len(body)) for body in cleared], indexing="ij")
        arrays = [np.array(body, dtype=np.int64) for body in cleared]
        mats = np.stack(
            [arr[g.reshape(-1)] for arr, g in zip(arrays, grids)], axis=1
        )
        dets = det_batch_int64(mats)
        total = sum(abs(int(d)) for d in dets.tolist())
    else:
        mats = np.array([choice for choice in product(*cleared)], dtype=object)
        total = sum(abs(d) for d in det_batch_exact(mats))
    return Fraction(total, math.factorial(n) * scale)


def mixed_area(x, y, fan_or_angles) -> float:
    """Mixed area of two support vectors on a shared fan.

    Computes (1/2) sum_i x_i * edge_length_i(y); symmetric in (x, y) up
    to roundoff.
    """
    if isinstance(fan_or_angles, PolygonFan):
        angles = fan_or_angles.angles
    else:
        angles = validate_fan_angles(fan_or_angles)
    xs = [float(v) for v in x]
    ys = [float(v) for v in y]
    if len(xs) != len(angles) or len(ys) != len(angles):
        raise InputError("support vectors must match the fan size")
    lengths = edge_lengths(angles, ys)
    return 0.5 * sum(a * l for a, l in zip(xs, lengths))


def _unify_variants(bodies: Sequence[ConvexBody]) -> list:
    """Lift mixed box/zonotope families to all-zonotope; else require one kind."""
    kinds = {type(b) for b in bodies}
    if kinds == {Box, Zonotope}:
        return [box_as_zonotope(b) if isinstance(b, Box) else b for b in bodies]
    if len(kinds) > 1:
        raise InputError("bodies must be of one kind (boxes may mix with zonotopes)")
    return list(bodies)


def mixed_volume(bodies: Sequence[ConvexBody]) -> Scalar:
    """Mixed volume by the best closed-form engine for the family."""
    bodies = list(bodies)
    if not bodies:
        raise InputError("need at least one body")
    bodies = _unify_variants(bodies)
    first = bodies[0]
    if isinstance(first, Box):
        return mixed_volume_boxes(bodies)
    if isinstance(first, Zonotope):
        return mixed_volume_zonotopes(bodies)
    if isinstance(first, PolygonFan):
        if len(bodies) != 2:
            raise InputError("polygon fans live in R^2: need exactly 2 bodies")
        if bodies[0].angles != bodies[1].angles:
            raise InputError("polygon fans must share identical normals")
        return mixed_area(bodies[0].support, bodies[1].support, bodies[0].angles)
    raise InputError(f"unsupported body {type(first).__name__}")


def mixed_volume_oracle(bodies: Sequence[ConvexBody]) -> Scalar:
    """Ground-truth mixed volume via inclusion-exclusion polarization.

    V(K_1,...,K_n) = (1/n!) sum over S of (-1)^(n-|S|) Vol(sum of K_i, i in S).
    Independent of the closed-form engines; 2^n volume evaluations.
    """
    bodies = _unify_variants(list(bodies))
    n = len(bodies)
    if n == 0:
        raise InputError("need at least one body")
    if n > ORACLE_MAX_BODIES:
        raise InputError(f"polarization oracle limited to {ORACLE_MAX_BODIES} bodies")
    dim = bodies[0].dim
    if any(b.dim != dim for b in bodies):
        raise InputError("bodies must share a dimension")
    if n != dim:
        raise InputError(f"need exactly {dim} bodies in R^{dim}, got {n}")
    exact = not isinstance(bodies[0], PolygonFan)
    total: Scalar = Fraction(0) if exact else 0.0
    for mask in range(1, 1 << n):
        members = [bodies[i] for i in range(n) if mask >> i & 1]
        vol = volume(minkowski_combine(members, [1] * len(members)))
        sign = -1 if (n - mask.bit_count()) % 2 else 1
        total += sign * vol
    return total / math.factorial(n) if exact else total / float(math.factorial(n))


def verify_af(
    K,
    L,
    refs: Sequence[ConvexBody] = (),
    tol: float = DEFAULT_TOL,
    angles: Optional[Sequence[float]] = None,
) -> InequalityReport:
    """Check V(K,L,refs)^2 >= V(K,K,refs) * V(L,L,refs).

    For n = 2, K and L may be polygon fans on one normal set, or raw
    support vectors together with ``angles``. Boxes and zonotopes verify
    on the exact rational path.
    """
    refs = list(refs)
    if angles is not None or isinstance(K, SupportVector):
        if refs:
            raise InputError("support-vector inputs are two-dimensional (no refs)")
        if angles is None:
            raise InputError("raw support vectors need fan angles")
        angles = validate_fan_angles(angles)
        v_kl = mixed_area(K, L, angles)
        v_kk = mixed_area(K, K, angles)
        v_ll = mixed_area(L, L, angles)
        return make_inequality_report(v_kl, v_kk, v_ll, tol)

    family = [K, L, *refs]
    v_kl = mixed_volume(family)
    v_kk = mixed_volume([K, K, *refs])
    v_ll = mixed_volume([L, L, *refs])
    return make_inequality_report(v_kl, v_kk, v_ll, tol)
