from fractions import Fraction

import pytest

from picardforms.s4hilbert import (
    IRREP_ORDER,
    IRREPS,
    PRINTED_NUMERATORS,
    hilbert_series,
    molien_numerator,
    poly_text,
    sym_multiplicity_direct,
    sym_multiplicity_series,
)


def test_character_table_is_orthonormal():
    for a in IRREPS.values():
        for b in IRREPS.values():
            assert a.inner(b) == (1 if a is b else 0)


@pytest.mark.parametrize("irrep", IRREP_ORDER)
def test_molien_numerators_match_printed(irrep):
    assert molien_numerator(irrep) == PRINTED_NUMERATORS[irrep]


def test_named_numerators():
    assert poly_text(molien_numerator("s[4]")) == "1 - t - t^3 + t^4 + t^6 - t^7"
    assert poly_text(molien_numerator("s[1,1,1,1]")) == "t^3 - t^4"


@pytest.mark.parametrize("irrep", IRREP_ORDER)
def test_molien_against_direct_traces(irrep):
    s = sym_multiplicity_series(irrep, 16)
    assert s == [sym_multiplicity_direct(irrep, k) for k in range(16)]


def test_sym0_is_trivial():
    assert [sym_multiplicity_series(r, 1)[0] for r in IRREP_ORDER] == [1, 0, 0, 0, 0]


def test_sym_dimensions_add_up():
    for k in range(10):
        dim = sum(IRREPS[r].dim * sym_multiplicity_direct(r, k) for r in IRREP_ORDER)
        assert dim == (k + 1) * (k + 2) // 2


def test_sigma42():
    h = hilbert_series("sigma42", 40)
    assert h.agree
    assert h.nonzero_terms()[:5] == [(4, 1), (10, 2), (16, 4), (22, 7), (28, 11)]


def test_scalar_cusp():
    h = hilbert_series("scalar_cusp", 40)
    assert h.agree
    assert h.nonzero_terms()[:5] == [(12, 1), (18, 2), (24, 3), (30, 4), (36, 6)]


def test_gamma_bracket():
    h = hilbert_series("gamma_bracket_dims", 40)
    assert h.agree
    assert h.coefficients[7] == 9 == Fraction(2 * 11, 2) - 2
    assert poly_text(h.numerator) == "t^4 + 6*t^7 - 2*t^10"


def test_unknown_target():
    with pytest.raises(KeyError):
        hilbert_series("nope")
