from fractions import Fraction

import pytest

from picardforms.arith import CoeffScalar, EisRat
from picardforms.level3 import (
    DecompositionError,
    Quasimodular,
    decompose,
    f_series,
    q_expansion,
)


def coeffs(form, n):
    return [form.series[3 * k] for k in range(n)]


def sigma1(n):
    return sum(d for d in range(1, n + 1) if n % d == 0)


def theta_count(n):
    # number of a + b rho of norm n
    return sum(1 for a in range(-n - 1, n + 2) for b in range(-n - 1, n + 2) if a * a - a * b + b * b == n)


def test_theta_counts_lattice_points():
    th = q_expansion("theta", 20)
    assert coeffs(th, 20) == [CoeffScalar(theta_count(n)) for n in range(20)]


def test_e2_from_sigma1():
    e2 = q_expansion("e2", 20)
    assert coeffs(e2, 20) == [CoeffScalar(1)] + [CoeffScalar(-24 * sigma1(n)) for n in range(1, 20)]


def test_eta8_relation():
    n = 30
    th, psi, eta8 = (q_expansion(k, n).series for k in ("theta", "psi", "eta8"))
    assert eta8 == psi * (th * th * th - psi * psi * psi * 27)


def test_decompose_eta8_psi2():
    n = 30
    psi, eta8 = (q_expansion(k, n).series for k in ("psi", "eta8"))
    d = decompose(eta8 * psi * psi, 6)
    assert d.coeffs == {(3, 3, 0): 1, (0, 6, 0): -27}
    assert d.e2_degree == 0


def test_decompose_basis_monomial():
    th, e2 = q_expansion("theta", 30).series, q_expansion("e2", 30).series
    d = decompose(th * e2, 3)
    assert d.coeffs == {(1, 0, 1): 1} and d.e2_degree == 1


def test_not_quasimodular():
    th = q_expansion("theta", 30).series
    with pytest.raises(DecompositionError):
        decompose(th * th + th, 2)


def test_f_series():
    f = f_series(50)
    want = [Fraction(-1, 6), 6, 9, 42, 78]
    assert [f[3 * k] for k in range(5)] == [CoeffScalar(w) for w in want]


def test_render():
    q = Quasimodular(6, {(3, 3, 0): EisRat(1), (0, 6, 0): EisRat(-27)})
    assert q.render() == "(theta^3*psi^3 - 27*psi^6)"
