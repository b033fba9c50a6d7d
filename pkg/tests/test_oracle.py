import json

import pytest

from bzf import oracle
from bzf.core import Element, FamilySpec
from bzf.oracle import (
    CHECKS,
    TruncatedSet,
    TruncationTooSmall,
    UnknownCheck,
    eval_setbased,
    run_all,
    run_check,
)
from bzf.report import CheckReport

E = Element
F3 = FamilySpec.finite(3)


def test_eval_setbased_examples():
    assert eval_setbased(E(1, 2, 0), E(2, 1, 0), 16) == E(1, 1, 0)
    assert eval_setbased(E(2, 3, 1), E(1, 1, 2), 16) == E(2, 3, 1)
    assert eval_setbased(E(0, 0, 0), E(0, 0, 0), 4) == E(0, 0, 0)


def test_eval_setbased_refuses_short_truncation():
    with pytest.raises(TruncationTooSmall):
        eval_setbased(E(0, 9, 2), E(0, 0, 0), 8)


def test_truncated_set_algebra():
    a = TruncatedSet.tail(2, 10)
    assert 1 not in a and 2 in a and 50 in a
    b = a.shift(-3)
    assert b.minimum() == -1 and 100 in b
    assert a.intersect(TruncatedSet.tail(5, 10)).minimum() == 5
    assert TruncatedSet.omega(6).intersect(b).minimum() == 0


def test_assoc_counts():
    r = run_check("assoc", 3, 3, F3)
    assert r.passed and r.tested == 196**3
    tiny = run_check("assoc", 0, 0, FamilySpec.finite(0))
    assert tiny.passed and tiny.tested == 1


def test_oracle_equiv_count():
    r = run_check("oracle-equiv", 3, 3, F3)
    assert r.passed and r.tested == 196**2


@pytest.mark.parametrize("fam", [FamilySpec.finite(2), FamilySpec.finite(0)], ids=str)
def test_run_all_finite(fam):
    reports = run_all(2, 2, fam)
    assert [r.name for r in reports] == list(CHECKS)
    assert len(reports) == 14
    assert all(r.passed and not r.skipped for r in reports)


def test_run_all_trivial_window():
    assert all(r.passed for r in run_all(0, 0, FamilySpec.finite(0)))


def test_run_all_infinite_skips_flip_checks():
    reports = {r.name: r for r in run_all(2, 2, FamilySpec.infinite())}
    assert all(r.passed for r in reports.values())
    assert reports["aut-flip"].skipped and reports["lemma-3-12"].skipped
    assert reports["aut-flip"].note
    assert not reports["assoc"].skipped


def test_counts_are_reproducible():
    a = [r.to_json() for r in run_all(1, 2, FamilySpec.finite(2))]
    b = [r.to_json() for r in run_all(1, 2, FamilySpec.finite(2))]
    assert a == b


def test_unknown_check():
    with pytest.raises(UnknownCheck):
        run_check("no-such-check", 1, 1, F3)


def test_report_json_line():
    r = CheckReport("x", 3, False, {"a": "(0,0,[0))"})
    assert json.loads(r.to_line()) == {"name": "x", "tested": 3, "passed": False, "counterexample": {"a": "(0,0,[0))"}}
    with pytest.raises(ValueError):
        CheckReport("x", 3, True, {"a": 1})


def test_oracle_equiv_catches_broken_mul(monkeypatch):
    real = oracle.mul

    def broken(a, b, fam=None):
        r = real(a, b, fam)
        if a.j == b.i and a.p != b.p:
            return E(r.i, r.j, min(a.p, b.p))
        return r

    monkeypatch.setattr(oracle, "mul", broken)
    r = run_check("oracle-equiv", 1, 1, FamilySpec.finite(1))
    assert not r.passed
    assert r.counterexample
