"""Mixed-discriminant calculus, the diagonal operator, trace identities."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixedforms import mixdisc, spectral
from mixedforms.exact import InputError, PreconditionError, fraction_det


def sym(rng, m, lo=-3, hi=3):
    a = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            v = Fraction(int(rng.integers(lo, hi + 1)), int(rng.integers(1, 3)))
            a[i][j] = v
            a[j][i] = v
    return a


def gram(rows):
    m = len(rows)
    return [
        [sum(rows[i][t] * rows[j][t] for t in range(len(rows[0]))) for j in range(m)]
        for i in range(m)
    ]


DIAG23 = [[2, 0], [0, 3]]
I2 = [[1, 0], [0, 1]]


class TestMixedDiscriminant:
    def test_repeated_argument_is_determinant(self):
        assert mixdisc.mixed_discriminant([DIAG23, DIAG23]) == 6

    def test_diag_with_identity(self):
        assert mixdisc.mixed_discriminant([DIAG23, I2]) == Fraction(5, 2)

    def test_rank_one_pair(self):
        v1v1 = [[1, 0], [0, 0]]
        v2v2 = [[1, 1], [1, 1]]
        assert mixdisc.mixed_discriminant([v1v1, v2v2]) == Fraction(1, 2)

    def test_float_path_matches_exact(self, rng):
        for _ in range(10):
            m = int(rng.integers(2, 5))
            mats = [sym(rng, m) for _ in range(m)]
            exact = mixdisc.mixed_discriminant(mats)
            floats = [np.array([[float(x) for x in row] for row in mat]) for mat in mats]
            approx = mixdisc.mixed_discriminant(floats)
            assert approx == pytest.approx(float(exact), rel=1e-9, abs=1e-12)

    def test_input_validation(self):
        with pytest.raises(InputError):
            mixdisc.mixed_discriminant([[[1, 2], [3, 4]], I2])  # asymmetric
        with pytest.raises(InputError):
            mixdisc.mixed_discriminant([[[1, 2, 3], [2, 1, 1]]])  # not square
        with pytest.raises(InputError):
            mixdisc.mixed_discriminant([I2])  # count != dimension


class TestDiscriminantCalculus:
    def test_symmetry_and_multilinearity(self, rng):
        for _ in range(10):
            m = int(rng.integers(2, 5))
            mats = [sym(rng, m) for _ in range(m)]
            d = mixdisc.mixed_discriminant(mats)
            perm = list(rng.permutation(m))
            assert mixdisc.mixed_discriminant([mats[i] for i in perm]) == d
            other = sym(rng, m)
            a, b = Fraction(3, 2), Fraction(-1, 3)
            combo = [
                [a * mats[0][i][j] + b * other[i][j] for j in range(m)] for i in range(m)
            ]
            assert mixdisc.mixed_discriminant([combo, *mats[1:]]) == a * d + b * (
                mixdisc.mixed_discriminant([other, *mats[1:]])
            )

    def test_congruence_scaling(self, rng):
        for _ in range(10):
            m = int(rng.integers(2, 5))
            mats = [sym(rng, m) for _ in range(m)]
            u = [[int(rng.integers(-2, 3)) for _ in range(m)] for _ in range(m)]
            conj = []
            for mat in mats:
                um = [
                    [sum(u[i][t] * mat[t][j] for t in range(m)) for j in range(m)]
                    for i in range(m)
                ]
                conj.append(
                    [
                        [sum(um[i][t] * u[j][t] for t in range(m)) for j in range(m)]
                        for i in range(m)
                    ]
                )
            scale = fraction_det(gram(u))
            assert mixdisc.mixed_discriminant(conj) == scale * mixdisc.mixed_discriminant(mats)

    def test_psd_nonnegativity_and_pd_positivity(self, rng):
        for _ in range(10):
            m = int(rng.integers(2, 5))
            psd = [gram([[int(rng.integers(-2, 3)) for _ in range(m)] for _ in range(m)]) for _ in range(m)]
            assert mixdisc.mixed_discriminant(psd) >= 0
            v = [int(rng.integers(-2, 3)) for _ in range(m)]
            if all(x == 0 for x in v):
                v[0] = 1
            first = [[v[i] * v[j] for j in range(m)] for i in range(m)]
            pd = [
                [
                    [x + (3 if i == j else 0) for j, x in enumerate(row)]
                    for i, row in enumerate(gram([[int(rng.integers(-2, 3)) for _ in range(m)] for _ in range(m)]))
                ]
                for _ in range(m - 1)
            ]
            assert mixdisc.mixed_discriminant([first, *pd]) > 0

    def test_rank_one_formula(self, rng):
        for _ in range(10):
            m = int(rng.integers(2, 5))
            cols = [[int(rng.integers(-3, 4)) for _ in range(m)] for _ in range(m)]
            mats = [[[c[i] * c[j] for j in range(m)] for i in range(m)] for c in cols]
            vmat = [[cols[j][i] for j in range(m)] for i in range(m)]
            expected = Fraction(fraction_det(vmat) ** 2, math.factorial(m))
            assert mixdisc.mixed_discriminant(mats) == expected


class TestMinorIdentity:
    def test_m2_identity(self):
        lhs, rhs = mixdisc.md_minor_identity(0, [I2])
        assert lhs == rhs == Fraction(1, 2)

    def test_m3_identity(self):
        i3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        lhs, rhs = mixdisc.md_minor_identity(0, [i3, i3])
        assert lhs == rhs == Fraction(1, 3)

    def test_rank_one_repeat_vanishes(self):
        e0e0 = [[1, 0], [0, 0]]
        lhs, rhs = mixdisc.md_minor_identity(0, [e0e0])
        assert lhs == rhs == 0

    def test_random_exact(self, rng):
        for _ in range(20):
            m = int(rng.integers(2, 6))
            mats = [sym(rng, m) for _ in range(m - 1)]
            i = int(rng.integers(0, m))
            lhs, rhs = mixdisc.md_minor_identity(i, mats)
            assert lhs == rhs

    def test_index_out_of_range(self):
        with pytest.raises(InputError):
            mixdisc.md_minor_identity(2, [I2])


class TestVerifyAlexandrov:
    def test_pinned_2x2(self):
        report = mixdisc.verify_alexandrov(DIAG23, I2)
        assert report.lhs == Fraction(25, 4)
        assert report.rhs == 6
        assert report.verdict and report.exact and not report.equality

    def test_proportional_equality(self):
        b = [[2, 1], [1, 3]]
        a = [[Fraction(-3, 2) * x for x in row] for row in b]
        report = mixdisc.verify_alexandrov(a, b)
        assert report.equality and report.gap == 0

    def test_non_psd_rejected(self):
        with pytest.raises(PreconditionError):
            mixdisc.verify_alexandrov(I2, [[1, 0], [0, -1]])
        with pytest.raises(PreconditionError):
            mixdisc.verify_alexandrov(I2, I2, [[[0, 2], [2, 0]]])

    def test_random_instances_hold(self, rng):
        for _ in range(100):
            m = int(rng.integers(2, 6))
            g = rng.standard_normal((m, m))
            b = g @ g.T
            ms = [rng.standard_normal((m, m)) for _ in range(m - 2)]
            ms = [x @ x.T for x in ms]
            a = rng.standard_normal((m, m))
            a = (a + a.T) / 2
            report = mixdisc.verify_alexandrov(a, b, ms)
            assert report.verdict


class TestDiagonalOperator:
    def test_n3_closed_form(self):
        op = mixdisc.diagonal_operator(3)
        expected = [
            [0, Fraction(1, 2), Fraction(1, 2)],
            [Fraction(1, 2), 0, Fraction(1, 2)],
            [Fraction(1, 2), Fraction(1, 2), 0],
        ]
        assert [list(r) for r in op.matrix_exact] == expected
        assert list(op.weights_exact) == [Fraction(1, 3)] * 3
        w, _ = spectral.eigh_weighted(op)
        assert w == pytest.approx([1.0, -0.5, -0.5], abs=1e-12)

    def test_normalization_and_self_adjointness(self, rng):
        for n in (3, 4, 5):
            mats = [gram([[int(rng.integers(-2, 3)) for _ in range(n)] for _ in range(n)]) for _ in range(n - 3)]
            mats = [
                [[x + (4 if i == j else 0) for j, x in enumerate(row)] for i, row in enumerate(m)]
                for m in mats
            ]
            op = mixdisc.diagonal_operator(n, mats)
            ones = [Fraction(1)] * n
            a = op.matrix_exact
            p = op.weights_exact
            assert all(sum(row[j] * ones[j] for j in range(n)) == 1 for row in a)
            for i in range(n):
                for j in range(n):
                    assert p[i] * a[i][j] == p[j] * a[j][i]
                    if i != j:
                        assert a[i][j] > 0

    def test_bochner_inequality_sampled(self, rng):
        op = mixdisc.diagonal_operator(3)
        a = op.matrix
        p = op.weights
        y = rng.standard_normal((1000, 3))
        ay = y @ a.T
        upper = np.einsum("ij,ij,j->i", ay, ay, p)
        lower = np.einsum("ij,ij,j->i", y, ay, p)
        assert np.all(upper - lower >= -1e-12)

    def test_spectrum_dichotomy_and_perron(self, rng):
        for n in (4, 5):
            mats = [gram([[int(rng.integers(-2, 3)) for _ in range(n)] for _ in range(n)]) for _ in range(n - 3)]
            mats = [
                [[x + (4 if i == j else 0) for j, x in enumerate(row)] for i, row in enumerate(m)]
                for m in mats
            ]
            op = mixdisc.diagonal_operator(n, mats)
            w, _ = spectral.eigh_weighted(op)
            tol = 1e-9
            assert np.all((w >= 1 - tol) | (w <= tol))
            assert abs(w[0] - 1.0) <= tol and w[1] < 1 - 1e-6
            perron = spectral.perron_check(op.matrix, op.weights)
            assert perron.irreducible and perron.top_simple and perron.top_vector_positive

    def test_validation(self):
        with pytest.raises(InputError):
            mixdisc.diagonal_operator(2)
        with pytest.raises(InputError):
            mixdisc.diagonal_operator(4)  # missing the one reference matrix
        with pytest.raises(PreconditionError):
            mixdisc.diagonal_operator(4, [[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]]])


class TestTraceIdentities:
    def test_diag123(self):
        report = mixdisc.trace_identities([[1, 0, 0], [0, 2, 0], [0, 0, 3]])
        assert report.d1_lhs == report.d1_rhs == 2
        assert report.d2_lhs == report.d2_rhs == Fraction(11, 3)

    def test_identity_matrix(self):
        report = mixdisc.trace_identities([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
        assert report.d1_lhs == report.d1_rhs == 1
        assert report.d2_lhs == report.d2_rhs == 1

    def test_projector(self):
        report = mixdisc.trace_identities([[1, 0], [0, 0]])
        assert report.d1_lhs == report.d1_rhs == Fraction(1, 2)
        assert report.d2_lhs == report.d2_rhs == 0

    def test_random_exact(self, rng):
        for _ in range(20):
            k = int(rng.integers(2, 7))
            assert mixdisc.trace_identities(sym(rng, k)).exact_match()


@settings(max_examples=25, deadline=None, derandomize=True)
@given(
    data=st.lists(
        st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3
    )
)
def test_symmetrized_discriminant_permutation_invariant(data):
    m = [[data[i][j] + data[j][i] for j in range(3)] for i in range(3)]
    i3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    d1 = mixdisc.mixed_discriminant([m, m, i3])
    d2 = mixdisc.mixed_discriminant([m, i3, m])
    d3 = mixdisc.mixed_discriminant([i3, m, m])
    assert d1 == d2 == d3
