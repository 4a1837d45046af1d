"""Bodies, support functions, Minkowski calculus, volumes, edge lengths."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixedforms import geom
from mixedforms.exact import InputError
from mixedforms.geom import Box, PolygonFan, SupportVector, Zonotope

from conftest import (
    box_vertices,
    fan_vertices_by_lines,
    hull_area,
    support_by_vertices,
    zonotope_points,
)

SQUARE = [0.0, math.pi / 2, math.pi, 3 * math.pi / 2]
HEXAGON = [k * math.pi / 3 for k in range(6)]


class TestSupport:
    def test_box_axis(self):
        assert geom.support(Box([1, 2]), [1, 0]) == 1

    def test_zonotope_axis(self):
        assert geom.support(Zonotope(2, [(1, 0), (1, 1)]), [0, 1]) == 1

    def test_box_diagonal_matches_vertex_oracle(self):
        b = Box([1, 1])
        assert geom.support(b, [1, 1]) == support_by_vertices(box_vertices(b), [1, 1]) == 2

    def test_random_bodies_match_vertex_oracle(self, rng):
        for _ in range(40):
            n = int(rng.integers(1, 4))
            b = Box(
                [Fraction(int(rng.integers(0, 5)), 2) for _ in range(n)],
                [Fraction(int(rng.integers(-4, 5)), 2) for _ in range(n)],
            )
            d = [Fraction(int(rng.integers(-3, 4))) for _ in range(n)]
            if all(x == 0 for x in d):
                d[0] = Fraction(1)
            assert geom.support(b, d) == support_by_vertices(box_vertices(b), d)
        for _ in range(40):
            n = 2
            z = Zonotope(
                n,
                [[int(rng.integers(-3, 4)) for _ in range(n)] for _ in range(4)],
                [int(rng.integers(-2, 3)) for _ in range(n)],
            )
            d = [Fraction(int(rng.integers(-3, 4))) for _ in range(n)]
            if all(x == 0 for x in d):
                d[0] = Fraction(1)
            assert geom.support(z, d) == support_by_vertices(zonotope_points(z), d)

    def test_fan_support_matches_vertices(self):
        fan = PolygonFan(SQUARE, [0.5] * 4)
        assert geom.support(fan, [1.0, 0.0]) == pytest.approx(0.5)
        assert geom.support(fan, [1.0, 1.0]) == pytest.approx(1.0)

    def test_errors(self):
        with pytest.raises(InputError):
            geom.support(Box([1, 2]), [0, 0])
        with pytest.raises(InputError):
            geom.support(Box([1, 2]), [1, 0, 0])


class TestMinkowskiCombine:
    def test_boxes(self):
        out = geom.minkowski_combine([Box([1, 2]), Box([3, 1])], [1, 1])
        assert out.sides == (Fraction(4), Fraction(3))

    def test_zonotope_scaling(self):
        out = geom.minkowski_combine([Zonotope(2, [(1, 0)])], [2])
        assert out.generators == ((Fraction(2), Fraction(0)),)

    def test_fans(self):
        a = PolygonFan(SQUARE, [Fraction(1, 2)] * 4)
        b = PolygonFan(SQUARE, [1] * 4)
        out = geom.minkowski_combine([a, b], [1, 1])
        assert list(out.support) == [1.5] * 4

    def test_support_linearity_exact(self, rng):
        for _ in range(25):
            n = int(rng.integers(1, 4))
            bodies = [
                Box(
                    [Fraction(int(rng.integers(0, 4)), 2) for _ in range(n)],
                    [Fraction(int(rng.integers(-2, 3)), 2) for _ in range(n)],
                )
                for _ in range(3)
            ]
            coeffs = [Fraction(int(rng.integers(0, 4)), 2) for _ in range(3)]
            combined = geom.minkowski_combine(bodies, coeffs)
            d = [Fraction(int(rng.integers(-3, 4))) for _ in range(n)]
            if all(x == 0 for x in d):
                d[0] = Fraction(1)
            expected = sum(c * geom.support(b, d) for c, b in zip(coeffs, bodies))
            assert geom.support(combined, d) == expected

    def test_support_linearity_fans(self, rng):
        angles = [k * 2 * math.pi / 5 for k in range(5)]
        fans = [PolygonFan(angles, 1.0 + 0.05 * rng.uniform(-1, 1, 5)) for _ in range(2)]
        coeffs = [0.75, 1.5]
        combined = geom.minkowski_combine(fans, coeffs)
        for _ in range(20):
            theta = rng.uniform(0, 2 * math.pi)
            d = (math.cos(theta), math.sin(theta))
            expected = sum(c * geom.support(f, d) for c, f in zip(coeffs, fans))
            assert geom.support(combined, d) == pytest.approx(expected, abs=1e-12)

    def test_mixed_variants_rejected(self):
        with pytest.raises(InputError):
            geom.minkowski_combine([Box([1]), Zonotope(1, [(1,)])], [1, 1])

    def test_mismatched_fans_rejected(self):
        a = PolygonFan(SQUARE, [1] * 4)
        b = PolygonFan(HEXAGON, [1] * 6)
        with pytest.raises(InputError):
            geom.minkowski_combine([a, b], [1, 1])

    def test_negative_coeff_rejected(self):
        with pytest.raises(InputError):
            geom.minkowski_combine([Box([1])], [-1])


class TestVolume:
    def test_box(self):
        assert geom.volume(Box([1, 2, 3])) == 6

    def test_zonotope_hexagon(self):
        z = Zonotope(2, [(1, 0), (0, 1), (1, 1)])
        assert geom.volume(z) == 3
        assert hull_area(zonotope_points(z)) == pytest.approx(3.0)

    def test_zonotope_matches_hull_oracle(self, rng):
        for _ in range(30):
            m = int(rng.integers(0, 6))
            z = Zonotope(
                2,
                [[int(rng.integers(-3, 4)) for _ in range(2)] for _ in range(m)],
                [int(rng.integers(-2, 3)) for _ in range(2)],
            )
            assert float(geom.volume(z)) == pytest.approx(
                hull_area(zonotope_points(z)), abs=1e-9
            )

    def test_fan_square(self):
        assert geom.volume(PolygonFan(SQUARE, [0.5] * 4)) == pytest.approx(1.0)

    def test_scaling_power(self, rng):
        bodies = [
            Box([2, 3], [-1, 0]),
            Zonotope(2, [(1, 0), (1, 2)]),
            Zonotope(3, [(1, 0, 0), (0, 1, 1), (1, 1, 0), (0, 0, 2)]),
        ]
        for body in bodies:
            v = geom.volume(body)
            for lam in (0, 1, 2, 3):
                scaled = geom.minkowski_combine([body], [lam])
                assert geom.volume(scaled) == Fraction(lam) ** body.dim * v

    def test_scaling_power_fan(self):
        fan = PolygonFan(HEXAGON, [1.0, 1.1, 0.95, 1.0, 1.05, 1.0])
        v = geom.volume(fan)
        for lam in (0, 1, 2, 3):
            scaled = geom.minkowski_combine([fan], [lam])
            assert geom.volume(scaled) == pytest.approx(lam**2 * v, abs=1e-12)

    def test_zonotope_volume_invariances(self, rng):
        gens = [(1, 0, 0), (0, 2, 1), (1, 1, 1), (0, 0, 3)]
        base = geom.volume(Zonotope(3, gens))
        perm = [gens[i] for i in (2, 0, 3, 1)]
        assert geom.volume(Zonotope(3, perm)) == base
        negated = [tuple(-x for x in gens[1])] + [g for i, g in enumerate(gens) if i != 1]
        assert geom.volume(Zonotope(3, negated)) == base

    def test_degenerate_zonotope_is_zero(self):
        assert geom.volume(Zonotope(3, [(1, 0, 0), (2, 0, 0)])) == 0
        assert geom.volume(Zonotope(2, [])) == 0


class TestEdgeLengths:
    def test_square(self):
        lengths = geom.edge_lengths(SQUARE, [0.5] * 4)
        assert lengths == pytest.approx([1.0] * 4)

    def test_point_has_zero_edges(self):
        h = geom.point_support_vector(SQUARE, (1, 0))
        assert geom.edge_lengths(SQUARE, h) == pytest.approx([0.0] * 4, abs=1e-12)

    def test_hexagon_matches_line_intersection_oracle(self):
        lengths = geom.edge_lengths(HEXAGON, [1.0] * 6)
        assert lengths == pytest.approx([2.0 / math.sqrt(3.0)] * 6)
        verts = fan_vertices_by_lines(HEXAGON, [1.0] * 6)
        for i in range(6):
            edge = np.linalg.norm(np.asarray(verts[i]) - np.asarray(verts[i - 1]))
            assert lengths[i] == pytest.approx(edge)

    def test_linearity(self, rng):
        angles = sorted(float(a) for a in rng.uniform(0, 2 * math.pi, 3))
        while max(np.diff(angles + [angles[0] + 2 * math.pi])) >= math.pi:
            angles = sorted(float(a) for a in rng.uniform(0, 2 * math.pi, 3))
        x = rng.standard_normal(3)
        y = rng.standard_normal(3)
        a, b = 0.7, -1.3
        combo = geom.edge_lengths(angles, a * x + b * y)
        expected = a * np.array(geom.edge_lengths(angles, x)) + b * np.array(
            geom.edge_lengths(angles, y)
        )
        assert combo == pytest.approx(list(expected), abs=1e-10)

    def test_positive_edges_positive_volume(self, rng):
        for m in (3, 5, 8, 13):
            base = 2 * math.pi / m
            angles = [(base * i + 0.1 * base * rng.uniform(-1, 1)) % (2 * math.pi) for i in range(m)]
            angles.sort()
            fan = PolygonFan(angles, 1.0 + 0.01 * rng.uniform(-1, 1, m))
            assert min(fan.edge_lengths()) > 0
            assert geom.volume(fan) > 0

    def test_wide_gap_rejected(self):
        with pytest.raises(InputError):
            geom.edge_lengths([0.0, 0.1, math.pi + 0.2], [1.0, 1.0, 1.0])


class TestValidation:
    def test_box_invariants(self):
        with pytest.raises(InputError):
            Box([])
        with pytest.raises(InputError):
            Box([-1])
        with pytest.raises(InputError):
            Box([1, 2], [0])

    def test_zonotope_invariants(self):
        with pytest.raises(InputError):
            Zonotope(0, [])
        with pytest.raises(InputError):
            Zonotope(2, [(1, 0, 0)])

    def test_fan_invariants(self):
        with pytest.raises(InputError):
            PolygonFan([0.0, 1.0], [1.0, 1.0])
        with pytest.raises(InputError):
            PolygonFan([0.0, 0.0, 1.0], [1.0] * 3)
        with pytest.raises(InputError):
            PolygonFan([0.0, 1.0, 7.0], [1.0] * 3)
        # negative edge length: a support vector far below its neighbors
        with pytest.raises(InputError):
            PolygonFan(SQUARE, [1.0, 1.0, 1.0, -5.0])

    def test_fan_simple_flag(self):
        assert PolygonFan(SQUARE, [0.5] * 4).is_simple()
        degenerate = PolygonFan(SQUARE, list(geom.point_support_vector(SQUARE, (1, 0))))
        assert not degenerate.is_simple()


@settings(max_examples=30, deadline=None, derandomize=True)
@given(
    sides=st.lists(st.integers(0, 5), min_size=1, max_size=3),
    lam=st.integers(0, 3),
)
def test_box_volume_scaling_property(sides, lam):
    b = Box(sides)
    scaled = geom.minkowski_combine([b], [lam])
    assert geom.volume(scaled) == Fraction(lam) ** b.dim * geom.volume(b)


def test_box_as_zonotope_equivalence():
    b = Box([2, 3], [1, -1])
    z = geom.box_as_zonotope(b)
    assert geom.volume(z) == geom.volume(b) == 6
    for d in ([1, 0], [0, 1], [1, 1], [-2, 3]):
        assert geom.support(z, d) == geom.support(b, d)
