"""Exact scalar parsing and fraction-free linear algebra."""

import math
from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest

from mixedforms.exact import (
    InputError,
    det_batch_exact,
    format_scalar,
    fraction_det,
    int64_det_entry_bound,
    int_det,
    parse_scalar,
    permanent,
)


def test_parse_scalar():
    assert parse_scalar(3) == Fraction(3)
    assert isinstance(parse_scalar(3), Fraction)
    assert parse_scalar("7/2") == Fraction(7, 2)
    assert parse_scalar("-1/3") == Fraction(-1, 3)
    assert parse_scalar(0.5) == 0.5
    assert isinstance(parse_scalar(0.5), float)
    with pytest.raises(InputError):
        parse_scalar("nonsense")
    with pytest.raises(InputError):
        parse_scalar("1/0")
    with pytest.raises(InputError):
        parse_scalar(True)
    with pytest.raises(InputError):
        parse_scalar(None)


def test_format_scalar():
    assert format_scalar(Fraction(7, 2), exact=True) == "7/2"
    assert format_scalar(Fraction(4), exact=True) == "4"
    assert format_scalar(1 / 3, exact=False) == format(1 / 3, ".17g")


def leibniz_det(rows):
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        # parity by counting inversions
        inv = sum(seen[i] > seen[j] for i in range(n) for j in range(i + 1, n))
        sign = -1 if inv % 2 else 1
        prod = Fraction(1)
        for i in range(n):
            prod *= Fraction(rows[i][perm[i]])
        total += sign * prod
    return total


def test_int_det_matches_leibniz():
    rng = np.random.default_rng(3)
    for _ in range(50):
        n = int(rng.integers(1, 6))
        rows = rng.integers(-5, 6, size=(n, n)).tolist()
        assert int_det(rows) == leibniz_det(rows)


def test_int_det_singular():
    assert int_det([[1, 2], [2, 4]]) == 0
    assert int_det([[0, 0], [0, 0]]) == 0


def test_fraction_det():
    rows = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 4), Fraction(1, 5)]]
    assert fraction_det(rows) == Fraction(1, 2) * Fraction(1, 5) - Fraction(1, 3) * Fraction(1, 4)


def test_det_batch_exact_mixed_magnitudes():
    small = np.array([[[2, 1], [1, 2]]], dtype=object)
    assert det_batch_exact(small) == [3]
    big = 10**12
    huge = np.array([[[big, 0], [0, big]]], dtype=object)
    assert det_batch_exact(huge) == [big * big]


def test_int64_bound_sane():
    for n in range(1, 5):
        b = int64_det_entry_bound(n)
        assert math.factorial(n) * b**n <= 2**62


def test_permanent_small():
    assert permanent([[1, 2], [3, 1]]) == 7
    assert permanent([[1]]) == 1
    assert permanent([]) == 1
    # permanent of all-ones n x n is n!
    for n in (3, 5, 9):
        rows = [[1] * n for _ in range(n)]
        assert permanent(rows) == math.factorial(n)


def dp_permanent(rows):
    """Subset-DP permanent, O(2^n * n): the test-side oracle."""
    n = len(rows)
    f = [0] * (1 << n)
    f[0] = 1
    for mask in range(1, 1 << n):
        row = rows[mask.bit_count() - 1]
        acc = 0
        rest = mask
        while rest:
            low = rest & -rest
            j = low.bit_length() - 1
            acc += row[j] * f[mask ^ low]
            rest ^= low
        f[mask] = acc
    return f[(1 << n) - 1]


def test_permanent_ryser_matches_dp():
    rng = np.random.default_rng(5)
    for n in (6, 9, 10):
        rows = rng.integers(-3, 4, size=(n, n)).tolist()
        assert permanent(rows) == dp_permanent(rows)


def test_permanent_rejects_ragged():
    with pytest.raises(InputError):
        permanent([[1, 2], [3]])
