"""Acceptance gate: every criterion at its stated sample count and
tolerance, one pass/fail line each."""

import pytest

from mixedforms import acceptance


@pytest.mark.parametrize(
    "criterion", acceptance.ALL_CRITERIA, ids=lambda c: c.__name__
)
def test_criterion(criterion):
    result = criterion()
    print(result.line())
    assert result.passed, result.line()
