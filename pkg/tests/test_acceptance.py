"""Acceptance gate: every criterion is run exactly and reported on one line."""

import pytest

from ospq.suite import ACCEPTANCE


@pytest.mark.parametrize("num,name,fn", ACCEPTANCE, ids=[f"{num}-{name}" for num, name, _ in ACCEPTANCE])
def test_criterion(num, name, fn, capsys):
    rpt = fn()
    with capsys.disabled():
        print(f"\n{'PASS' if rpt.ok else 'FAIL'} criterion {num}: {name}")
    assert rpt.ok, str(rpt)
