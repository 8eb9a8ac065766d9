from pathlib import Path

import pytest

import kuperberg as kb

DATA = Path(__file__).resolve().parents[2] / "data"


def test_catalog_and_integrals():
    h4 = kb.catalog("sweedler_h4")
    assert h4.dim == 4
    assert h4.basis == ["1", "g", "x", "gx"]
    assert all(passed for _, passed, _ in h4.check_axioms())
    data = kb.integrals(h4)
    assert data["alpha_g"] == "-1"
    assert all(passed for _, passed, _ in data["checks"])
    assert "sweedler_h4" in kb.catalog_names()


def test_invariants_match_known_values():
    z2 = kb.catalog("group_algebra_Z2")
    torus = kb.builtin_diagram("torus3")
    assert kb.evaluate(z2, torus)["value"] == "8"
    assert kb.evaluate(z2, torus, naive=True)["value"] == "8"
    h4 = kb.catalog("sweedler_h4")
    weeks = kb.builtin_diagram("weeks")
    assert kb.evaluate(h4, weeks)["value"] == "-25"
    assert kb.evaluate(h4, weeks, degree_offset=1)["value"] == "25"
    assert kb.weeks_closed_form(h4) == "25"
    assert kb.torus_closed_form(z2) == "8"


def test_diagrams_round_trip():
    weeks = kb.load_khd(str(DATA / "weeks.khd"))
    assert weeks.genus == 2
    assert len(weeks.points) == 18
    assert kb.parse_khd(weeks.serialize()).serialize() == weeks.serialize()
    exps = dict((p, s) for p, s, _ in weeks.exponents())
    assert exps["p4"] == -3 and exps["p9"] == 1
    broken = kb.load_khd(str(DATA / "broken.khd"))
    assert not all(passed for _, passed, _ in broken.validate())


def test_gauge_and_suites():
    h4 = kb.catalog("sweedler_h4")
    twist = kb.load_cocycle(str(DATA / "h4_twist.cocycle"), h4)
    result = kb.gauge_check(h4, twist, kb.builtin_diagram("weeks"))
    assert result["equal"] and result["z"] == result["z_twisted"]
    for suite in (kb.trace_identity_suite(h4, 2), kb.exchange_identity_suite(h4, 1),
                  kb.cocycle_identity_suite(h4, twist, 3, 1)):
        assert suite and all(passed for _, passed, _ in suite)


def test_errors_carry_codes():
    with pytest.raises(kb.KuperbergError) as info:
        kb.builtin_diagram("poincare")
    assert info.value.code == "UnknownDiagram"
    h4 = kb.catalog("sweedler_h4")
    with pytest.raises(kb.KuperbergError):
        kb.idempotent_cocycle(h4, 1, -1)
    with pytest.raises(kb.KuperbergError):
        kb.parse_khd("genus 1\nlower eta1 theta one\n")
