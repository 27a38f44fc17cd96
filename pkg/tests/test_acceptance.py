"""Acceptance battery: one line per criterion.

    pytest tests/test_acceptance.py -v -s
    python tests/test_acceptance.py

Tolerances and corpora are the constants in crosslab.verify.
"""

import pytest

from crosslab import verify

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script from elsewhere
    ACCEPTANCE_LINES = []


@pytest.mark.parametrize("cid,title,fn", verify.CRITERIA, ids=[f"criterion-{c[0]}" for c in verify.CRITERIA])
def test_criterion(cid, title, fn, corpus):
    res = verify._timed(cid, title, fn, corpus)
    print(res.line())
    ACCEPTANCE_LINES.append(res.line())
    assert res.passed, res.detail


if __name__ == "__main__":
    import sys

    results = verify.run_suite(echo=print)
    sys.exit(0 if all(r.passed for r in results) else 1)
