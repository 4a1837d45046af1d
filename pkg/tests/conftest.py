"""Shared brute-force oracles, deliberately independent of the package's
closed-form engines."""

import itertools
import math

import numpy as np
import pytest
from scipy.spatial import ConvexHull


def box_vertices(box):
    """All 2^n corners of a box, via subset enumeration."""
    n = box.dim
    out = []
    for mask in range(1 << n):
        out.append(
            tuple(
                box.anchor[i] + (box.sides[i] if mask >> i & 1 else 0)
                for i in range(n)
            )
        )
    return out


def support_by_vertices(vertices, direction):
    return max(sum(a * b for a, b in zip(v, direction)) for v in vertices)


def zonotope_points(z):
    """All subset sums of generators: the zonotope is their convex hull."""
    pts = []
    for mask in range(1 << len(z.generators)):
        acc = list(z.anchor)
        for j, g in enumerate(z.generators):
            if mask >> j & 1:
                for i in range(z.dim):
                    acc[i] += g[i]
        pts.append(tuple(float(x) for x in acc))
    return pts


def hull_area(points):
    """Area of the convex hull of 2D points (SciPy's 'volume' is area in 2D)."""
    arr = np.asarray(points, dtype=float)
    centered = arr - arr.mean(axis=0)
    if np.linalg.matrix_rank(centered, tol=1e-9) < 2:
        return 0.0
    return float(ConvexHull(arr).volume)


def fan_vertices_by_lines(angles, support):
    """Polygon vertices from pairwise supporting-line intersections."""
    m = len(angles)
    pts = []
    for i in range(m):
        j = (i + 1) % m
        a = np.array(
            [
                [math.cos(angles[i]), math.sin(angles[i])],
                [math.cos(angles[j]), math.sin(angles[j])],
            ]
        )
        b = np.array([support[i], support[j]], dtype=float)
        pts.append(np.linalg.solve(a, b))
    return pts


def minkowski_sum_points(points_a, points_b):
    return [
        (xa + xb, ya + yb) for (xa, ya) in points_a for (xb, yb) in points_b
    ]


@pytest.fixture
def rng():
    return np.random.default_rng(20240824)


def random_rational(rng, lo=-4, hi=4, max_den=3):
    from fractions import Fraction

    return Fraction(int(rng.integers(lo, hi + 1)), int(rng.integers(1, max_den + 1)))


def brute_force_subsets(n):
    return list(itertools.chain.from_iterable(
        itertools.combinations(range(n), k) for k in range(n + 1)
    ))
