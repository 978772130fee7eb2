"""Acceptance gate: the verification catalog, one printed line per criterion.

The catalog lives in widomlab.verify so the CLI verify subcommand and
this gate run exactly the same checks.  Lines go to the real stdout so
they stay visible under pytest's capture.
"""

import sys
import time

import pytest

from widomlab import verify

_T0 = time.perf_counter()
RESULTS = verify.run_criteria()
_ELAPSED = time.perf_counter() - _T0


@pytest.mark.parametrize(
    "result", RESULTS, ids=[f"criterion_{r.index}" for r in RESULTS])
def test_criterion(result, capsys):
    with capsys.disabled():
        sys.stdout.write("\n" + result.line())
        sys.stdout.flush()
    assert result.passed, result.line()


def test_catalog_is_complete():
    assert [r.index for r in RESULTS] == list(range(1, 10))


def test_runtime_budget():
    # the whole catalog has to finish comfortably inside five minutes
    assert _ELAPSED < 300.0, f"criteria took {_ELAPSED:.1f}s"
