"""Acceptance gate: every criterion from the checks registry, one test each.

Run with -v to get one PASS/FAIL line per criterion. Failures carry the
check's own diagnostic detail.
"""

import pytest

from guevertex import checks

_IDS = [f"{spec.number:02d}-{spec.slug}" for spec in checks.REGISTRY]


@pytest.mark.parametrize("spec", checks.REGISTRY, ids=_IDS)
def test_criterion(spec):
    outcome = checks.run_check(spec)
    assert outcome.ok, outcome.detail
