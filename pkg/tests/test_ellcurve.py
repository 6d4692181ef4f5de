import pytest

from picardforms.arith import RHO, XI, CoeffScalar, EisRat, ULaurent
from picardforms.ellcurve import (
    BasisError,
    EllipticPoly,
    basis_convert,
    basis_expand,
    divide_by_x,
    scale_argument,
    tables,
)

X = EllipticPoly.monomial(1, 0, 0)
Y = EllipticPoly.monomial(0, 1, 0)
Z = EllipticPoly.monomial(0, 0, 1)
DEPTH = 40


def expand(p):
    return basis_expand(p, DEPTH)


def test_cubic_relation_is_built_in():
    assert X * X * X == (Y * Y * Y - Z * Z * Z) * RHO


def test_taylor_tables_leading_values():
    t = tables(20)
    assert t.c[0] == CoeffScalar.monomial(1, 1)
    assert t.d[0] == CoeffScalar(1)
    assert t.d[1] == CoeffScalar.monomial(RHO * RHO / 6, 3)


def test_expand_x_starts_with_c1_u():
    s = expand(X)
    assert s[0] == CoeffScalar() and s[1] == CoeffScalar.monomial(1, 1)
    assert s[7] == tables(20).c[1]


def test_expand_constant():
    one = EllipticPoly(0, {(0, 0, 0): 1})
    s = basis_expand(one, 5)
    assert s[0] == CoeffScalar(1) and all(not s[m] for m in range(1, 5))


def test_scaling_rules():
    sx = expand(X)
    assert scale_argument(sx, RHO).agrees_with(sx.scale(CoeffScalar(RHO)))
    sy = expand(Y)
    assert scale_argument(sy, RHO).agrees_with(sy)
    assert scale_argument(sy, 1).agrees_with(sy)


def test_sqrt_minus3_multiplication():
    s3 = 1 + 2 * RHO
    lhs = scale_argument(expand(X), s3)
    assert basis_convert(lhs, 3) == X * Y * Z * s3


def test_unit_orbit_sum():
    sx = expand(X)
    units = [EisRat(1), RHO, RHO * RHO, EisRat(-1), -RHO, -RHO * RHO]
    total = None
    for e in units:
        term = scale_argument(sx, e).scale(CoeffScalar(e.conj()))
        total = term if total is None else total + term
    assert basis_convert(total, 1) == X * 6


def test_round_trip_through_taylor():
    p = X * Y * Z * 18 + X * X * Y * 5
    assert basis_convert(expand(p), 3) == p
    q = X * X * (Y * Y * Y * Y - Y * Z * Z * Z * 3)
    assert basis_convert(expand(q), 6) == q


def test_not_a_theta_polynomial():
    bogus = ULaurent.from_dict({2: CoeffScalar.monomial(1, 2)}, DEPTH)
    with pytest.raises(BasisError):
        basis_convert(bogus, 1)


def test_divide_by_x():
    assert divide_by_x(X * X * Y) == X * Y
    assert divide_by_x((Y * Y * Y - Z * Z * Z) * RHO) == X * X
    with pytest.raises(BasisError):
        divide_by_x(Y)


def test_shifted_variables():
    y0 = EllipticPoly.monomial(0, 1, 0, shifted=True)
    assert (y0 * XI).shifted
    with pytest.raises(ValueError):
        y0 * Y
