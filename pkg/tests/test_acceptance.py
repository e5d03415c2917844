"""The acceptance table, full profile, every check exact.

Each test prints one line ``criterion N: PASS|FAIL``; the same lines are
repeated in the terminal summary (see conftest.py).
"""
import pytest

from cyclobrauer.acceptance import ROWS, run_criterion

RESULTS = {}


def _fmt(row):
    line = "criterion %d (%s): %s" % (row["id"], row["name"], row["status"].upper())
    if row["status"] != "pass":
        line += "  first failure: %s" % row.get("first_failure")
    return line


@pytest.mark.parametrize("cid", range(1, len(ROWS) + 1), ids=lambda c: "criterion_%d" % c)
def test_criterion(cid):
    timings = {}
    row = run_criterion(cid, "full", timings)
    row["seconds"] = timings[cid]
    RESULTS[cid] = row
    print(_fmt(row))
    failed = [c["name"] for c in row["checks"] if c["status"] != "pass"]
    assert row["status"] == "pass", "failing checks: %s" % failed
