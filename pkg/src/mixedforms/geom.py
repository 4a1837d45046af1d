"""Concrete convex bodies: axis-aligned boxes, zonotopes, and 2D normal fans.

Boxes and zonotopes carry exact rational data end-to-end. Polygon fans
store their normal directions as angles in [0, 2*pi) and run in double
precision, since the cosecants/cosines of fan gaps are irrational in
general. All values are immutable after construction and all operations
are pure functions.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence, Union

import numpy as np

from ._kernels import det_batch_int64
from .exact import InputError, Scalar, det_batch_exact, int64_det_entry_bound

TWO_PI = 2.0 * math.pi

# Relative slack for float validation of fan edge lengths.
EDGE_TOL = 1e-9


def _as_fraction_tuple(values, what: str) -> tuple:
    try:
        return tuple(Fraction(v) for v in values)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{what} must be rational numbers") from exc


@dataclass(frozen=True)
class SupportVector:
    """Values of a support function on a fixed ordered direction set."""

    values: tuple

    def __init__(self, values):
        object.__setattr__(self, "values", tuple(values))

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]


@dataclass(frozen=True)
class Box:
    """Axis-aligned box: anchor + [0, sides[0]] x ... x [0, sides[n-1]]."""

    sides: tuple
    anchor: tuple

    def __init__(self, sides, anchor=None):
        sides = _as_fraction_tuple(sides, "box sides")
        if not sides:
            raise InputError("box needs dimension >= 1")
        if any(s < 0 for s in sides):
            raise InputError("box sides must be nonnegative")
        if anchor is None:
            anchor = (Fraction(0),) * len(sides)
        else:
            anchor = _as_fraction_tuple(anchor, "box anchor")
            if len(anchor) != len(sides):
                raise InputError("box anchor length must match dimension")
        object.__setattr__(self, "sides", sides)
        object.__setattr__(self, "anchor", anchor)

    @property
    def dim(self) -> int:
        return len(self.sides)

    def centered(self) -> "Box":
        """Same box translated so that the origin is its center."""
        return Box(self.sides, tuple(-s / 2 for s in self.sides))


@dataclass(frozen=True)
class Zonotope:
    """Minkowski sum of segments [0, v_j], translated by an anchor."""

    dim: int
    generators: tuple
    anchor: tuple

    def __init__(self, dim, generators, anchor=None):
        dim = int(dim)
        if dim < 1:
            raise InputError("zonotope needs dimension >= 1")
        gens = tuple(_as_fraction_tuple(g, "zonotope generator") for g in generators)
        for g in gens:
            if len(g) != dim:
                raise InputError(f"generator length {len(g)} != dim {dim}")
        if anchor is None:
            anchor = (Fraction(0),) * dim
        else:
            anchor = _as_fraction_tuple(anchor, "zonotope anchor")
            if len(anchor) != dim:
                raise InputError("zonotope anchor length must match dimension")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "anchor", anchor)


def box_as_zonotope(box: Box) -> Zonotope:
    """A box is the zonotope on its scaled axis generators."""
    n = box.dim
    gens = []
    for i, s in enumerate(box.sides):
        g = [Fraction(0)] * n
        g[i] = s
        gens.append(g)
    return Zonotope(n, gens, box.anchor)


def validate_fan_angles(angles: Sequence[float]) -> tuple:
    """Check and normalize a fan's direction angles.

    Angles must lie in [0, 2*pi), be strictly increasing, and have every
    consecutive gap (including the wrap-around) strictly inside (0, pi).
    """
    out = tuple(float(a) for a in angles)
    m = len(out)
    if m < 3:
        raise InputError("a polygon fan needs at least 3 directions")
    for a in out:
        if not (0.0 <= a < TWO_PI) or math.isnan(a):
            raise InputError(f"fan angle {a} outside [0, 2*pi)")
    for i in range(m):
        gap = out[i] - out[i - 1] if i > 0 else out[0] + TWO_PI - out[m - 1]
        if gap <= 0.0:
            raise InputError("fan angles must be strictly increasing")
        if gap >= math.pi:
            raise InputError(f"consecutive fan angle gap {gap:.6g} >= pi")
    return out


@dataclass(frozen=True)
class PolygonFan:
    """A polygon given by its facet normal fan and support values.

    ``angles`` are the facet normal directions sorted counterclockwise;
    ``support`` holds h at each direction. A fan is a valid polygon when
    every edge length is nonnegative; it is a simple representative when
    all edge lengths are strictly positive.
    """

    angles: tuple
    support: SupportVector

    def __init__(self, angles, support):
        angles = validate_fan_angles(angles)
        support = SupportVector(float(v) for v in support)
        if len(support) != len(angles):
            raise InputError("support length must match number of fan directions")
        lengths = edge_lengths(angles, support)
        scale = max(1.0, max(abs(v) for v in support))
        if min(lengths) < -EDGE_TOL * scale:
            raise InputError(
                f"support vector has negative edge length {min(lengths):.3g}; "
                "not a polygon on this fan"
            )
        object.__setattr__(self, "angles", angles)
        object.__setattr__(self, "support", support)

    @property
    def dim(self) -> int:
        return 2

    @property
    def normals(self) -> tuple:
        return tuple((math.cos(a), math.sin(a)) for a in self.angles)

    def edge_lengths(self) -> list:
        return edge_lengths(self.angles, self.support)

    def is_simple(self) -> bool:
        """True when every edge has strictly positive length."""
        scale = max(1.0, max(abs(v) for v in self.support))
        return min(self.edge_lengths()) > EDGE_TOL * scale

    def vertices(self) -> list:
        """Polygon vertices: intersections of consecutive supporting lines.

        Vertex i joins the supporting lines of directions i and i+1.
        """
        m = len(self.angles)
        h = self.support.values
        pts = []
        for i in range(m):
            j = (i + 1) % m
            ai, aj = self.angles[i], self.angles[j]
            det = math.sin(aj - ai)
            x = (h[i] * math.sin(aj) - h[j] * math.sin(ai)) / det
            y = (h[j] * math.cos(ai) - h[i] * math.cos(aj)) / det
            pts.append((x, y))
        return pts


ConvexBody = Union[Box, Zonotope, PolygonFan]


def _fan_gaps(angles: Sequence[float]) -> list:
    """gap[i] = angle from direction i-1 to direction i (cyclic)."""
    m = len(angles)
    return [
        angles[i] - angles[i - 1] if i > 0 else angles[0] + TWO_PI - angles[m - 1]
        for i in range(m)
    ]


def edge_lengths(fan_or_angles, support=None) -> list:
    """Edge lengths of the polygon a support vector cuts out on a fan.

    Linear in the support values; the result is the facet-length vector
    when it is componentwise nonnegative. Accepts a PolygonFan or an
    (angles, support) pair.
    """
    if isinstance(fan_or_angles, PolygonFan):
        angles = fan_or_angles.angles
        if support is None:
            support = fan_or_angles.support
    else:
        angles = validate_fan_angles(fan_or_angles)
        if support is None:
            raise InputError("edge_lengths needs a support vector")
    h = [float(v) for v in support]
    m = len(angles)
    if len(h) != m:
        raise InputError(f"support length {len(h)} != fan size {m}")
    gaps = _fan_gaps(angles)
    out = []
    for i in range(m):
        g_prev = gaps[i]
        g_next = gaps[(i + 1) % m]
        term_prev = (h[i - 1] - h[i] * math.cos(g_prev)) / math.sin(g_prev)
        term_next = (h[(i + 1) % m] - h[i] * math.cos(g_next)) / math.sin(g_next)
        out.append(term_prev + term_next)
    return out


def support(body: ConvexBody, direction: Sequence[Scalar]) -> Scalar:
    """Support function h(direction) = sup over the body of <y, direction>.

    Exact rational for boxes and zonotopes with rational directions.
    """
    direction = list(direction)
    if all(d == 0 for d in direction):
        raise InputError("support direction must be nonzero")
    if isinstance(body, Box):
        if len(direction) != body.dim:
            raise InputError(f"direction dim {len(direction)} != body dim {body.dim}")
        value = sum(t * d for t, d in zip(body.anchor, direction))
        for s, d in zip(body.sides, direction):
            if d > 0:
                value += s * d
        return value
    if isinstance(body, Zonotope):
        if len(direction) != body.dim:
            raise InputError(f"direction dim {len(direction)} != body dim {body.dim}")
        value = sum(t * d for t, d in zip(body.anchor, direction))
        for g in body.generators:
            inner = sum(a * d for a, d in zip(g, direction))
            if inner > 0:
                value += inner
        return value
    if isinstance(body, PolygonFan):
        if len(direction) != 2:
            raise InputError("polygon fans live in the plane")
        dx, dy = float(direction[0]), float(direction[1])
        return max(x * dx + y * dy for x, y in body.vertices())
    raise InputError(f"unsupported body {type(body).__name__}")


def minkowski_combine(bodies: Sequence[ConvexBody], coeffs: Sequence[Scalar]) -> ConvexBody:
    """Weighted Minkowski sum of bodies of one kind.

    Support functions combine linearly: h(sum) = sum of coeff * h(body).
    Polygon fans must share identical direction angles.
    """
    bodies = list(bodies)
    coeffs = list(coeffs)
    if not bodies:
        raise InputError("need at least one body")
    if len(bodies) != len(coeffs):
        raise InputError("one coefficient per body required")
    if any(c < 0 for c in coeffs):
        raise InputError("Minkowski coefficients must be nonnegative")
    kind = type(bodies[0])
    if any(type(b) is not kind for b in bodies):
        raise InputError("cannot combine bodies of different kinds")

    if kind is Box:
        dim = bodies[0].dim
        if any(b.dim != dim for b in bodies):
            raise InputError("boxes must share a dimension")
        coeffs = [Fraction(c) for c in coeffs]
        sides = [sum(c * b.sides[i] for c, b in zip(coeffs, bodies)) for i in range(dim)]
        anchor = [sum(c * b.anchor[i] for c, b in zip(coeffs, bodies)) for i in range(dim)]
        return Box(sides, anchor)

    if kind is Zonotope:
        dim = bodies[0].dim
        if any(b.dim != dim for b in bodies):
            raise InputError("zonotopes must share a dimension")
        coeffs = [Fraction(c) for c in coeffs]
        gens = []
        anchor = [Fraction(0)] * dim
        for c, b in zip(coeffs, bodies):
            for i in range(dim):
                anchor[i] += c * b.anchor[i]
            if c == 0:
                continue
            gens.extend(tuple(c * x for x in g) for g in b.generators)
        return Zonotope(dim, gens, anchor)

    if kind is PolygonFan:
        angles = bodies[0].angles
        if any(b.angles != angles for b in bodies):
            raise InputError("polygon fans must share identical normals")
        coeffs = [float(c) for c in coeffs]
        m = len(angles)
        values = [
            sum(c * b.support[i] for c, b in zip(coeffs, bodies)) for i in range(m)
        ]
        return PolygonFan(angles, values)

    raise InputError(f"unsupported body {kind.__name__}")


@lru_cache(maxsize=None)
def _comb_indices(m: int, n: int) -> np.ndarray:
    if m < n:
        return np.empty((0, n), dtype=np.intp)
    return np.array(list(combinations(range(m), n)), dtype=np.intp)


def _zonotope_volume(z: Zonotope) -> Fraction:
    """Sum of |det| over n-subsets of generators, exact over rationals."""
    n = z.dim
    m = len(z.generators)
    if m < n:
        return Fraction(0)
    scales = []
    rows = []
    for g in z.generators:
        d = 1
        for x in g:
            d = d * x.denominator // math.gcd(d, x.denominator)
        scales.append(d)
        rows.append([int(x * d) for x in g])
    idx = _comb_indices(m, n)
    max_abs = max((abs(x) for r in rows for x in r), default=0)
    if n <= 4 and max_abs <= int64_det_entry_bound(n):
        mats = np.array(rows, dtype=np.int64)[idx]
        dets = [int(d) for d in det_batch_int64(mats)]
    else:
        dets = det_batch_exact(np.array(rows, dtype=object)[idx])
    if all(d == 1 for d in scales):
        return Fraction(sum(abs(d) for d in dets))
    d_all = math.prod(scales)
    total = 0
    for subset, det in zip(idx.tolist(), dets):
        div = math.prod(scales[j] for j in subset)
        total += abs(det) * (d_all // div)
    return Fraction(total, d_all)


def volume(body: ConvexBody) -> Scalar:
    """Volume of a body; exact rational for boxes and zonotopes.

    Rank-deficient zonotopes get volume 0 rather than an error, matching
    the behavior of volume on lower-dimensional bodies.
    """
    if isinstance(body, Box):
        vol = Fraction(1)
        for s in body.sides:
            vol *= s
        return vol
    if isinstance(body, Zonotope):
        return _zonotope_volume(body)
    if isinstance(body, PolygonFan):
        lengths = body.edge_lengths()
        return 0.5 * sum(h * l for h, l in zip(body.support, lengths))
    raise InputError(f"unsupported body {type(body).__name__}")


def point_support_vector(angles: Sequence[float], point: Sequence[float]) -> SupportVector:
    """Support vector of a single point: <z, u_i> at each fan direction."""
    x, y = float(point[0]), float(point[1])
    return SupportVector(x * math.cos(a) + y * math.sin(a) for a in angles)


def body_support_vector(body: ConvexBody, angles: Sequence[float]) -> SupportVector:
    """Restriction of a body's support function to a fan's directions."""
    return SupportVector(
        float(support(body, (math.cos(a), math.sin(a)))) for a in angles
    )
