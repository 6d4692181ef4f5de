from fractions import Fraction

import pytest

from picardforms import pmforms
from picardforms.arith import RHO, EisRat
from picardforms.ellcurve import EllipticPoly
from picardforms.fjcore import build_basic


def test_covariant_relations_suite():
    rep = pmforms.run_suite("covariant-relations")
    assert rep.ok, rep.render()
    assert len(rep.checks) == 3


def test_parse_theta_poly():
    p = pmforms.parse_theta_poly("-272*Y^3 - 272*Z^3")
    assert p.degree == 3
    assert p.terms == {(0, 3, 0): -272, (0, 0, 3): -272}
    assert pmforms.parse_theta_poly("X*Y^2*Z").terms == {(1, 2, 1): 1}
    with pytest.raises(ValueError):
        pmforms.parse_theta_poly("3*W")


def test_display_poly_carries_x_squared():
    p = pmforms.display_poly(4, "-6*Y*Z")
    assert p == EllipticPoly(4, {(2, 1, 1): -6})
    assert pmforms.display_poly(3, "0") == EllipticPoly(3, {})


def test_chi44_display_low_rows():
    chi = build_basic("chi44", 24, 32)
    disp = {n: pmforms.CHI44_DISPLAY[n] for n in range(2, 7)}
    ok, witness, detail = pmforms.check_display(chi.components[4], disp, "chi44")
    assert ok, witness
    assert detail == "through q_v^6"


def test_check_display_reports_mismatch_and_depth():
    chi = build_basic("chi44", 24, 32)
    ok, witness, kind = pmforms.check_display(chi.components[4], {4: "6*Y*Z"}, "chi44")
    assert not ok and kind == "mismatch" and "q_v^4" in witness
    ok, _, kind = pmforms.check_display(chi.components[4], {9: "0"}, "chi44")
    assert not ok and kind == "depth"


def test_level3_identities():
    res = {cid: (ok, detail) for cid, ok, detail in pmforms.level3_identities(20)}
    assert res["eta^8 = psi*(theta^3 - 27*psi^3)"][0]
    assert res["psi*(theta^3 - psi^3) differs from eta^8"][0]
    assert res["Theta_6 = 6*theta*psi^3*(theta^3 - 27*psi^3)"][0]
    assert res["Theta_6 = 6*theta*psi^2*eta^8"][0]
    assert res["F = -1/6 + 6q + 9q^2 + 42q^3 + 78q^4"][0]
    # the product as printed is off by the six units of O_F
    ok, detail = res["Theta_12 = theta*eta^8*(eta^16 + 18*psi^4*eta^8 + 729*psi^8)"]
    assert not ok
    assert detail == "Theta_12 = 6 times the product exactly"
    assert res["Theta_12 = 6*theta*eta^8*(eta^16 + 18*psi^4*eta^8 + 729*psi^8)"][0]


def test_expected_restriction_rendering():
    exp = pmforms.expected_restrictions()
    assert exp[("E11", 0, 0)].render() == "c1^1*gam^0*(theta)"
    assert exp[("zeta", 0, 1)].weight == 7


def test_zeta6_relation_coefficients():
    sol, _, _ = pmforms.zeta6_relation()
    want = {"E6^6": 0, "E6^4*E12": 9, "E6^2*E12^2": 6, "E12^3": 1, "E6^3*E9^2": -8, "E6*E12*E9^2": -24, "E9^4": 16}
    assert sol == {k: EisRat(v) for k, v in want.items()}


def test_catalog_metadata_small_depth():
    for name, want in pmforms.CATALOG_METADATA.items():
        F = pmforms.catalog(name, 6, 6)
        assert (tuple(F.weight), F.det_char, F.s4_sign) == want, name


def test_catalog_unknown():
    with pytest.raises(KeyError):
        pmforms.catalog("chi5")


def test_form_by_name():
    F = pmforms.form_by_name("E11", 9, 8)
    assert F.name == "E11" and len(F.components) == 2
    S = pmforms.form_by_name("E6", 9, 8)
    assert len(S.components) == 1 and S.weight == (0, 6)
    with pytest.raises(KeyError, match="unknown form"):
        pmforms.form_by_name("chi7", 9, 8)


def test_congruences_hold_on_basic_forms():
    e11 = build_basic("E11", 18, 18)
    assert pmforms.congruence_violations(e11, lambda i, m, t: (m - i) % 6 == 0) is None
    assert pmforms.congruence_violations(e11, pmforms.mod3_rule(e11)) is None
    z = build_basic("zeta", 18, 20)
    assert pmforms.congruence_violations(z, lambda i, m, t: m % 6 == 1) is None


def test_congruence_violation_is_reported():
    z = build_basic("zeta", 18, 20)
    w = pmforms.congruence_violations(z, lambda i, m, t: m % 6 == 0)
    assert w is not None and w.startswith("component 0")


def test_printed_taylor_values():
    c7 = pmforms.printed_taylor("c", 7)
    assert c7.lead()[0] == EisRat(Fraction(6, 5040)) * RHO


def test_qv_label():
    assert pmforms.qv_label(12) == "q_v^4"
    assert pmforms.qv_label(4) == "q_v^(4/3)"


def test_suite_report_render():
    rep = pmforms.SuiteReport("demo")
    rep.add("a", True, None, "fine")
    rep.add("b", False, "here", "broken")
    assert not rep.ok
    text = rep.render()
    assert text.splitlines()[0] == "suite demo: FAIL"
    assert "[witness: here]" in text
    assert rep.to_dict()["checks"][1]["status"] == "fail"


def test_unknown_suite():
    with pytest.raises(KeyError):
        pmforms.run_suite("nope")
