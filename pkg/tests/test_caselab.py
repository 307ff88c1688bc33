import json

from markedhilb.caselab import CaseStudyReport, _Step, run_case, run_steps


def test_selection_rules():
    steps = [_Step("a", 1, "k", lambda: 1), _Step("b-x", 2, "k", lambda: 3),
             _Step("b-y", 2, "k", lambda: 2, heavy=True)]
    r = run_steps("t", steps)
    assert [c.check for c in r.checks] == ["a", "b-x"]
    assert not r.passed and [c.check for c in r.failed()] == ["b-x"]
    assert [c.check for c in run_steps("t", steps, heavy=True).checks] == ["a", "b-x", "b-y"]
    assert [c.check for c in run_steps("t", steps, only=["b"]).checks] == ["b-x", "b-y"]
    assert [c.check for c in run_steps("t", steps, heavy=True, skip=["heavy"]).checks] == ["a", "b-x"]
    assert [c.check for c in run_steps("t", steps, skip=["a"]).checks] == ["b-x"]


def test_crash_is_failure():
    r = run_steps("t", [_Step("boom", 1, "k", lambda: 1 / 0)])
    assert r.checks[0].status == "fail" and "ZeroDivisionError" in r.checks[0].computed


def test_report_schema():
    r = run_case("1551", only=["tangent"])
    assert [c.check for c in r.checks] == ["tangent"]
    row = r.as_dict()["checks"][0]
    assert set(row) == {"check", "expected", "computed", "ref", "status", "millis"}
    assert row["status"] == "pass" and row["computed"] == 60
    json.dumps(r.as_dict())


def test_case_1551_light():
    r = run_case("1551", skip=["heavy"])
    assert r.passed, [c.as_dict() for c in r.failed()]
    names = {c.check for c in r.checks}
    assert {"strata", "support", "family-at-zero", "gin", "segment"} <= names


def test_negative_control():
    r = run_case("1771", only=["negative-control", "initial-family"])
    assert r.passed
    got = {c.check: c.computed for c in r.checks}
    assert got["initial-family"] is False
    assert got["negative-control"]["initial_changes"]
