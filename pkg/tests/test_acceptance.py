"""Acceptance criteria, one test per criterion.

Each test runs the corresponding suite criterion at the standard seed and
sample count, prints its pass/fail line, and asserts the verdict. Failures
surface the recorded details for diagnosis.
"""

import json

import pytest

from perispec.algebra import DEFAULT_TOL
from perispec.suite import CRITERIA

SEED = 42
SAMPLES = 10000

_BY_ID = dict(CRITERIA)


@pytest.mark.parametrize("cid", [cid for cid, _ in CRITERIA])
def test_acceptance_criterion(cid):
    result = _BY_ID[cid](SEED, SAMPLES, DEFAULT_TOL)
    print(f"[{result.cid}] {'PASS' if result.passed else 'FAIL'} {result.title}")
    assert result.passed, json.dumps(result.details, default=str, indent=2)
