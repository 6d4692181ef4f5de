from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from picardforms.arith import (
    RHO,
    XI,
    CoeffScalar,
    EisRat,
    ThirdsQSeries,
    ULaurent,
    enumerate_norm,
)

small = st.integers(-30, 30)
eis = st.builds(EisRat, small, small)


def brute_norm(n, box=6):
    return sorted((a, b) for a in range(-box, box + 1) for b in range(-box, box + 1) if a * a - a * b + b * b == n)


def test_norms_of_named_elements():
    assert EisRat(1, 3).norm() == 7
    assert EisRat(2, 1).norm() == 3
    z = EisRat(0)
    assert (z.norm(), z.trace()) == (0, 0)


def test_rho_is_a_cube_root_of_unity():
    assert RHO * RHO == -1 - RHO
    assert RHO ** 3 == EisRat(1)
    assert XI == (RHO * RHO - 1) / 3


@given(eis, eis)
def test_norm_is_multiplicative(a, b):
    assert (a * b).norm() == a.norm() * b.norm()


@given(eis)
def test_conjugate_gives_norm(a):
    assert a * a.conj() == EisRat(a.norm())


@given(eis)
def test_inverse(a):
    if a:
        assert a * a.inverse() == EisRat(1)


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4, 7, 12, 13, 21])
def test_enumerate_norm_matches_brute_force(n):
    got = sorted((int(x.re), int(x.rh)) for x in enumerate_norm(n))
    assert got == brute_norm(n)


def test_units_and_norm_seven():
    assert len(enumerate_norm(1)) == 6
    assert enumerate_norm(2) == []
    seven = enumerate_norm(7)
    assert len(seven) == 12 and EisRat(1, 3) in seven


def test_shifted_shell_has_norm_n_over_3():
    for n in (1, 4, 7, 13):
        for x in enumerate_norm(n, "shifted"):
            assert x.norm() * 3 == n


def test_coeff_scalar_monomials_multiply():
    a = CoeffScalar.monomial(EisRat(2), 3, -1)
    b = CoeffScalar.monomial(RHO, -3, 2)
    assert a * b == CoeffScalar.monomial(2 * RHO, 0, 1)
    assert (a + a) == a * 2
    assert not (a - a)


def test_ulaurent_division_and_derivative():
    u2 = ULaurent.from_dict({2: CoeffScalar(1)}, 8)
    u1 = ULaurent.from_dict({1: CoeffScalar(1)}, 8)
    assert (u2 / u1).agrees_with(u1)
    d = ULaurent.from_dict({1: CoeffScalar.monomial(1, 1)}, 8).derive()
    assert d[0] == CoeffScalar.monomial(1, 1)


def test_ulaurent_division_by_zero_raises():
    with pytest.raises((ZeroDivisionError, ArithmeticError, ValueError)):
        ULaurent.from_dict({1: CoeffScalar(1)}, 8) / ULaurent.from_dict({}, 8)


def test_thirds_series():
    t = ThirdsQSeries({0: CoeffScalar(5)}, 30)
    assert not t.qderive().coeffs
    one = ThirdsQSeries({0: CoeffScalar(1)}, 30)
    th = ThirdsQSeries({0: 1, 3: 6, 9: 6}, 30)
    assert th * one == th
    with pytest.raises(ValueError):
        ThirdsQSeries({-1: 1}, 9)


def test_fraction_coercion():
    assert EisRat(Fraction(1, 2)) + EisRat(Fraction(1, 2)) == EisRat(1)
