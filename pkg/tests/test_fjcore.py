from fractions import Fraction

import pytest

from picardforms.arith import RHO, XI, CoeffScalar
from picardforms.ellcurve import EllipticPoly
from picardforms.fjcore import (
    DivisionError,
    FJSeries,
    build_basic,
    build_block,
    constant_vector,
    div_by_zeta,
    nu,
    orders_T1,
    rank,
    restrict_T1,
    row_poly,
    sym_product,
)
from picardforms.pmforms import C, catalog, compare_vectors, parse_theta_poly

QT, UT = 18, 16
X = EllipticPoly.monomial(1, 0, 0)


def basic(name, qt=QT, ut=UT):
    return build_basic(name, qt, ut)


def test_blocks():
    assert build_block("P", 1) == parse_theta_poly("6*X")
    assert build_block("P", 7) == parse_theta_poly("-6*X*Y^6 + 96*X*Y^3*Z^3 - 6*X*Z^6")
    s4 = parse_theta_poly("6*Y^4 - 12*Y*Z^3") * C(XI.conj())
    assert build_block("S", 4) == EllipticPoly(4, s4.terms, shifted=True)
    with pytest.raises(KeyError):
        build_block("W", 1)


def test_zeta_leading_term():
    z = basic("zeta").components[0]
    assert z.first_cell()[:2] == (3, 1)
    assert row_poly(z, 3, degree=1, shifted=False) == X


def test_e11_leading_term():
    e = basic("E11")
    assert e.components[0].first_cell() == (0, 0, CoeffScalar.monomial(1, 1))
    assert e.components[1].is_zero() or e.components[1].qval() > 0


def test_chi44_component4_leading_rows():
    c = basic("chi44", 18, 30).components[4]
    assert row_poly(c, 6, degree=2, shifted=False) == X * X
    assert row_poly(c, 9, degree=3, shifted=False).is_zero()
    assert row_poly(c, 12, degree=4, shifted=False) == X * X * parse_theta_poly("-6*Y*Z")


def test_sym_product_of_constants():
    e1 = constant_vector([1, 0], 6, 6)
    p = sym_product([e1, e1, e1, e1])
    assert [c.is_zero() for c in p.components] == [False, True, True, True, True]
    assert p.components[0].first_cell() == (0, 0, CoeffScalar(1))


def test_zeta_squared_and_metadata():
    z = basic("zeta")
    zz = z * z
    assert zz.components[0].first_cell()[:2] == (6, 2)
    e = basic("E11")
    ee = e * e
    assert tuple(ee.weight) == (2, 2) and ee.det_char == 2


def test_div_by_zeta_round_trip():
    z, e = basic("zeta"), basic("E11")
    q = div_by_zeta(z * e, 1)
    ok, witness, _ = compare_vectors(q, e)
    assert ok, witness


def test_div_by_zeta_orders_and_failure():
    chi = basic("chi44", 18, 24)
    assert [o for o, _ in orders_T1(div_by_zeta(chi, 1, allow_negative=True))] == [3, 4, -1, 0, 1]
    with pytest.raises(DivisionError):
        div_by_zeta(basic("E11"), 1)


def test_chi4m2_is_chi44_over_zeta():
    ok, w, _ = compare_vectors(basic("chi4m2", 15, 12), div_by_zeta(basic("chi44", 15, 16), 1, allow_negative=True))
    assert ok, w


def test_nu_images():
    ok, w, _ = compare_vectors(nu("J011", 12, 12), basic("E11", 12, 12))
    assert ok, w
    ok, w, _ = compare_vectors(nu("J140", 12, 12), basic("zeta", 12, 12).scale(C(Fraction(3, 70), 4)))
    assert ok, w


def test_nu_rejects_inhomogeneous():
    with pytest.raises(ValueError):
        nu("J140 + J200", 6, 6)


def test_orders():
    assert [o for o, _ in orders_T1(basic("chi44"))] == [4, 5, 0, 1, 2]
    assert [o for o, _ in orders_T1(basic("E11"))] == [0, 1]
    assert [o for o, _ in orders_T1(nu("J300", 9, 12))] == [-3]


def test_rank():
    e6 = catalog("E6", 24, 16)
    c44, c410 = catalog("chi44", 24, 16), catalog("chi4_10", 24, 16)
    assert rank([(e6 * c44).components[4], c410.components[4]]) == 2
    assert rank([FJSeries.zero(9, 9)]) == 0
    assert rank([c44.components[4], c44.components[4].scale(C(RHO))]) == 1


def test_restrictions():
    z = basic("zeta", 60, 4)
    d = restrict_T1(z, components=[0], start=1, u_depth=1)[0].decomposition
    assert d.coeffs == {(4, 3, 0): 1, (1, 6, 0): -27} and d.scale == (1, 0)
    e = basic("E11", 60, 4)
    d = restrict_T1(e, components=[0], start=0, u_depth=1)[0].decomposition
    assert d.coeffs == {(1, 0, 0): 1} and d.scale == (1, 0)
    chi = basic("chi44", 60, 4)
    d = restrict_T1(chi, components=[2], start=0, u_depth=1)[0].decomposition
    # h0 = -(c1^2/gam^2) eta^8 psi^2 = -(c1^2/gam^2)(theta^3 psi^3 - 27 psi^6)
    assert d.coeffs == {(3, 3, 0): -1, (0, 6, 0): 27} and d.scale == (2, -2)
