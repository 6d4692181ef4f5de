import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from picardforms.covariants import (
    GENERATOR_DEGREES,
    GENERATOR_TABLE,
    UNIVERSAL_F,
    UNIVERSAL_H,
    UNIVERSAL_L,
    BinaryForm,
    act,
    build_generator,
    discriminant_quartic,
    eval_covariant,
    eval_expression,
    jname,
    parse_jname,
    random_unimodular,
    sylvester_discriminant,
    transvectant,
    verify_identity,
)

coef = st.integers(-6, 6)
quartic = st.lists(coef, min_size=5, max_size=5)
linear = st.lists(coef, min_size=2, max_size=2)


def values(name, f4, f1):
    v = eval_covariant(name, f4, f1)
    return [v[i] for i in sorted(v)]


def test_twenty_generators():
    assert len(GENERATOR_DEGREES) == 20
    assert len(set(GENERATOR_TABLE.values())) == 20


def test_transvectant_order_zero_is_product():
    f, h = UNIVERSAL_F, UNIVERSAL_H
    assert transvectant(f, h, 0).coeffs == (f * h).coeffs


def test_transvectant_order_too_large():
    with pytest.raises(ValueError):
        transvectant(UNIVERSAL_H, UNIVERSAL_H, 2)


def test_J200_closed_form():
    # (12 a0 a4 - 3 a1 a3 + a2^2) / 6 with unscaled quartic coefficients
    a = [3, -1, 4, 1, -5]
    want = Fraction(12 * a[0] * a[4] - 3 * a[1] * a[3] + a[2] ** 2, 6)
    assert eval_covariant("J200", a, [0, 0])[0] == want


def test_h_l_first_transvectant():
    t = transvectant(UNIVERSAL_H, UNIVERSAL_L, 1)
    b0, b1 = UNIVERSAL_H.coeffs
    l0, l1 = UNIVERSAL_L.coeffs
    assert t.coeffs[0] == b0 * l1 - b1 * l0


def test_named_generators():
    assert values("J011", [0] * 5, [2, 7]) == [2, 7]
    assert values("J104", [70, 0, 0, 0, 70], [0, 0]) == [1, 0, 0, 0, 1]
    # a0 b1^4 - a1 b0 b1^3 + a2 b0^2 b1^2 - a3 b0^3 b1 + a4 b0^4 is the raw transvectant;
    # the generator carries the 1/70 that makes nu(J140) = (3 c1^4/70) zeta
    a, (b0, b1) = [2, -3, 5, 1, 4], (3, -2)
    raw = a[0] * b1 ** 4 - a[1] * b0 * b1 ** 3 + a[2] * b0 ** 2 * b1 ** 2 - a[3] * b0 ** 3 * b1 + a[4] * b0 ** 4
    assert [70 * x for x in values("J140", a, [b0, b1])] == [raw]
    assert values("J140", [70, 0, 0, 0, 0], [0, 1]) == [1]


def test_name_forms():
    assert parse_jname("I22") == (0, 1, 1)
    assert parse_jname("J_{3,0,6}") == (3, 0, 6)
    assert jname((1, 4, 0)) == "J140"
    with pytest.raises(KeyError):
        parse_jname("J999")


@pytest.mark.parametrize("expr", [
    "5250*J240^3 + 26136*J360^2 + 1750*J140^3*J300 - 2625*J140^2*J200*J240",
    "3*J240^3 + 13068/875*J360^2 + J140^3*J300 - 3/2*J240*J140^2*J200",
    "132*J011*J333 + 175*(J240*J104 - J140*J204)",
    "J200 - J200",
])
def test_identities_vanish(expr):
    assert verify_identity(expr)


def test_nonzero_identity_has_witness():
    res = verify_identity("J200 + J300")
    assert not res and res.witness and res.n_terms > 0


@settings(max_examples=25, deadline=None)
@given(quartic, linear, st.sampled_from(GENERATOR_DEGREES), st.integers(0, 10 ** 6))
def test_equivariance_under_sl2(f4, f1, deg, seed):
    g = random_unimodular(random.Random(seed))
    name = jname(deg)
    lhs = values(name, *act(g, f4, f1))
    rhs = act(g, values(name, f4, f1), [0, 0])[0]
    assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(quartic)
def test_discriminant_matches_sylvester(f4):
    # Res(f, f') = a0 * disc for a quartic
    assert sylvester_discriminant(f4) == f4[0] * discriminant_quartic(f4)


def test_discriminant_repeated_root():
    assert discriminant_quartic([1, 0, 0, 0, 0]) == 0
    assert discriminant_quartic([1, 0, 0, 0, 1]) == 256


def test_expression_evaluation_is_multiplicative():
    f4, f1 = [1, 2, -1, 0, 3], [2, -1]
    (a,) = values("J140", f4, f1)
    (b,) = values("J200", f4, f1)
    assert eval_expression("J140^2*J200", f4, f1) == {0: a * a * b}


def test_binary_form_power():
    h = UNIVERSAL_H
    assert (h ** 2).coeffs == (h * h).coeffs
    assert isinstance(build_generator("J204").form, BinaryForm)
