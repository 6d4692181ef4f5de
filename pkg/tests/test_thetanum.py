import random
from fractions import Fraction

import numpy as np
import pytest

from picardforms.thetanum import (
    C1_PRIME,
    CHARACTER_TABLE,
    GENERATORS,
    RHO,
    S4_GENERATORS,
    SAMPLE_POINTS,
    GroupElement,
    NumericError,
    ThetaChar,
    c1_closed,
    c1_numeric,
    c_closed,
    c_numeric,
    character_table_errors,
    congruent_to_one,
    gradient_relation_residual,
    iota,
    is_symplectic,
    numeric_compare,
    preserves_hermitian,
    r_action_errors,
    slash_factors,
    slash_ratio,
    theta_eval,
    theta_on_iota,
)

IDENTITY = GroupElement("1", tuple(tuple((1, 0) if i == j else (0, 0) for j in range(3)) for i in range(3)))


def ball_points(n, seed=0):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        u = complex(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6))
        v = complex(rng.uniform(-1.5, -0.3), rng.uniform(-1, 1))
        if 2 * v.real + abs(u) ** 2 < -0.3:
            out.append((u, v))
    return out


def test_odd_characteristic_vanishes():
    ch = ThetaChar((Fraction(1, 2),), (Fraction(1, 2),))
    assert abs(theta_eval(ch, [[1j]], [0])) < 1e-14


def test_non_positive_tau():
    with pytest.raises(NumericError):
        theta_eval(ThetaChar((0,), (0,)), [[-1j]], [0])


def test_constants():
    assert abs(c_numeric() - c_closed()) < 1e-10
    assert abs(c1_numeric() - c1_closed()) < 1e-10


def test_iota_shape_and_ball():
    t = iota(0, -1.0)
    assert abs(t[0, 0] - t[2, 2]) < 1e-14 and abs(t[0, 0] + 2 * t[0, 2]) < 1e-14
    assert abs(t[1, 1] - (1 + RHO)) < 1e-14
    with pytest.raises(NumericError):
        iota(2, 0.1)


def test_thetas_vanish_on_iota():
    for i in range(len(C1_PRIME)):
        assert abs(theta_on_iota(i, 0.1, -1.0)) < 1e-10
        assert gradient_relation_residual(i, 0.1, -1.0) < 1e-10


def test_sigma_is_symplectic_and_generators_are_unitary():
    assert np.array_equal(IDENTITY.sigma(), np.eye(6, dtype=np.int64))
    for g in list(GENERATORS.values()) + list(S4_GENERATORS.values()):
        assert preserves_hermitian(g)
        assert is_symplectic(g.sigma())
    assert all(congruent_to_one(GENERATORS["g%d" % i]) for i in range(1, 6))


def test_slash_factors():
    j1, j2 = slash_factors(IDENTITY, 0.1, -1.0)
    assert abs(j1 - 1) < 1e-15 and np.abs(j2 - np.eye(2)).max() < 1e-15
    j1, _ = slash_factors(GENERATORS["g0"], 0.1, -1.0)
    assert abs(j1 - RHO) < 1e-15
    rng = random.Random(3)
    for u, v in ball_points(20, 1):
        g = rng.choice(list(GENERATORS.values()))
        j1, j2 = slash_factors(g, u, v)
        assert abs(np.linalg.det(j2) - j1 / np.linalg.det(g.complex())) < 1e-12


def test_g1_column_of_character_table():
    want = [{"1": 1, "rho": RHO, "rho2": RHO * RHO}[CHARACTER_TABLE[i][1]] for i in range(5)]
    assert want == [RHO, RHO, 1, 1, RHO]
    for i in range(5):
        assert np.abs(slash_ratio(i, GENERATORS["g1"], 0.1, -1.0) - want[i]).max() < 1e-8


@pytest.mark.slow
def test_character_and_r_tables():
    assert max(character_table_errors(SAMPLE_POINTS).values()) < 1e-8
    assert max(r_action_errors(SAMPLE_POINTS).values()) < 1e-8


def test_expansions_against_direct_evaluation():
    assert numeric_compare("E11", 0.05, -3.0) < 1e-6
    assert numeric_compare("zeta", 0.05, -3.0) < 1e-8


def test_expansion_needs_small_qv():
    with pytest.raises(NumericError):
        numeric_compare("E11", 0.05, -0.5)


def test_taylor_tables_against_cauchy_integrals():
    # independent of the functional-equation solver: n! a_n / c1^n from the theta series
    from math import factorial

    from picardforms.ellcurve import tables
    from picardforms.thetanum import X_numeric, Y_numeric, normalized_taylor

    tab = tables(20)
    c1 = c1_numeric()
    xs = normalized_taylor(X_numeric, 19, c1)
    ys = normalized_taylor(Y_numeric, 15, c1)
    for j, r in enumerate(tab.x[:4]):
        n = 6 * j + 1
        assert abs(xs[n] - complex(r) * factorial(n)) <= 1e-6 * max(1, abs(xs[n])), n
    for j, r in enumerate(tab.y[:6]):
        n = 3 * j
        assert abs(ys[n] - complex(r) * factorial(n)) <= 1e-6 * max(1, abs(ys[n])), n
    # c19 * 19! / c1^19 = -2^6 3^4 23 numerically as well
    assert abs(xs[19] + 119232) < 1e-3
