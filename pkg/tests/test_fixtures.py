import pytest

from markedhilb import fixtures
from markedhilb.fixtures import (FixtureError, checksum, fixture_names, load, parse_fixture,
                                 parse_text, quarantine, raw_text, serialize_body)
from markedhilb.poly import parse_poly

NAMES = fixture_names()


@pytest.mark.parametrize("name", NAMES)
def test_parse_and_canonical(name):
    fx = parse_fixture(name)
    canon = serialize_body(fx)
    assert canon == fx.body
    again = parse_text(raw_text(name), name)
    assert serialize_body(again) == canon


def test_expected_shapes():
    assert len(load("f32_dim7")) == 32
    assert len(load("f17_dim5")) == 17
    assert len(load("gtau_dim7")) == 32
    C0 = load("elim_C0")
    assert len(C0) == 154 and C0["c_1_1"] == -3
    assert len(load("elim_eliminated")) == 25
    assert len(load("elim_u")) == 25
    assert len(load("elim_Ctilde")) == 109
    assert len(load("points_dim7").entries) == 8


def test_empty_name():
    with pytest.raises(FixtureError):
        parse_fixture("")
    with pytest.raises(FixtureError):
        parse_fixture("no_such_fixture")


def test_checksum_pinned(monkeypatch):
    text = raw_text("jg5")
    monkeypatch.setattr(fixtures, "raw_text", lambda name: text.replace("x1^4", "x1^5"))
    with pytest.raises(FixtureError):
        parse_fixture("jg5")


def test_bad_text():
    with pytest.raises(FixtureError):
        parse_text("@name x\n@kind polys\n@ring 2\np: x1 +\n")
    with pytest.raises(FixtureError):
        parse_text("@name x\n@kind widgets\n")


def test_quarantine_records():
    fam = load("gtau_dim7")
    recs = quarantine()
    assert {r["label"] for r in recs} == {"F4", "F13"}
    for r in recs:
        assert r["printed"] != r["corrected"] and r["reason"]
        assert fam[r["label"]] == parse_poly(r["corrected"], 7)
