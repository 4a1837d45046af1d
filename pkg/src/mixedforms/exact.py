"""Exact rational scalars and small-matrix linear algebra.

Everything here is denominator-clearing plus integer arithmetic: rational
matrices are scaled to integer ones with a known factor, determinants are
computed fraction-free (Bareiss), and batches of very small integer
matrices are routed through the compiled kernels when the entries are
provably inside the int64 overflow bound.
"""

import math
from fractions import Fraction
from itertools import permutations
from typing import Union

import numpy as np

from ._kernels import det_batch_int64

Scalar = Union[int, Fraction, float]


class InputError(ValueError):
    """Invalid argument: wrong dimensions, malformed data, broken invariant."""


class PreconditionError(InputError):
    """Arguments are well-formed but outside a theorem's hypotheses."""


def parse_scalar(value) -> Scalar:
    """Parse a number from CLI/JSON input.

    Ints and "p/q" strings become exact ``Fraction``s; anything float-like
    stays a float (and poisons exactness downstream).
    """
    if isinstance(value, bool):
        raise InputError(f"expected a number, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse {value!r} as a rational") from exc
    raise InputError(f"expected a number, got {value!r}")


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction))


def all_exact(values) -> bool:
    return all(is_exact(v) for v in values)


def format_scalar(x, exact: bool) -> str:
    """Render a value the way reports print it: p/q if exact, 17 digits else."""
    if exact:
        f = Fraction(x)
        return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(f.numerator)
    return format(float(x), ".17g")


def int_det(rows) -> int:
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def fraction_det(rows) -> Fraction:
    """Exact determinant of a rational matrix via row denominator clearing."""
    ints, scale = clear_denominators_rows(rows)
    return Fraction(int_det(ints), scale)


def clear_denominators_rows(rows):
    """Scale each row to integers; returns (int rows, product of row scales)."""
    out = []
    scale = 1
    for row in rows:
        fr = [Fraction(x) for x in row]
        d = 1
        for x in fr:
            d = d * x.denominator // math.gcd(d, x.denominator)
        out.append([int(x * d) for x in fr])
        scale *= d
    return out, scale


def clear_denominators_matrix(rows):
    """Scale a whole rational matrix by one common denominator d.

    Returns (int rows, d) with int_rows == d * rows.
    """
    fr = [[Fraction(x) for x in row] for row in rows]
    d = 1
    for row in fr:
        for x in row:
            d = d * x.denominator // math.gcd(d, x.denominator)
    return [[int(x * d) for x in row] for row in fr], d


def int64_det_entry_bound(n: int) -> int:
    """Max |entry| for which an n x n integer determinant fits in int64."""
    return int((2**62 / math.factorial(n)) ** (1.0 / n))


def det_batch_exact(mats: np.ndarray) -> list:
    """Exact dets of a (B, n, n) integer batch, int64-fast when safe.

    ``mats`` may be an object array of Python ints; values outside the
    int64 bound fall back to per-matrix Bareiss.
    """
    arr = np.asarray(mats)
    if arr.size == 0:
        return []
    n = arr.shape[1]
    if n <= 4:
        bound = int64_det_entry_bound(n)
        try:
            as64 = np.asarray(arr, dtype=np.int64)
        except OverflowError:
            as64 = None
        if as64 is not None and np.abs(as64).max(initial=0) <= bound:
            return [int(d) for d in det_batch_int64(as64)]
    return [int_det(m) for m in arr.tolist()]


def permanent(rows) -> Scalar:
    """Permanent of a square matrix; direct expansion for n <= 8, Ryser above."""
    n = len(rows)
    if n == 0:
        return 1
    if any(len(r) != n for r in rows):
        raise InputError("permanent needs a square matrix")
    if n <= 8:
        total = 0
        for perm in permutations(range(n)):
            prod = rows[0][perm[0]]
            for i in range(1, n):
                prod = prod * rows[i][perm[i]]
            total += prod
        return total
    # Ryser: perm(A) = (-1)^n sum_S (-1)^|S| prod_i sum_{j in S} a_ij
    total = 0
    for mask in range(1, 1 << n):
        size = mask.bit_count()
        cols = [j for j in range(n) if mask >> j & 1]
        prod = 1
        for i in range(n):
            prod *= sum(rows[i][j] for j in cols)
        total += (-1) ** size * prod
    return (-1) ** n * total
