import pytest
from hypothesis import given, strategies as st

from picardforms.covariants import GENERATOR_DEGREES, jname
from picardforms.exprparse import (
    ExprSyntaxError,
    InhomogeneousExpression,
    UnknownGenerator,
    parse_expr,
    to_text,
    tri_degree,
)


def test_product_tri_degree():
    assert tri_degree(parse_expr("J140^2*J204")) == (4, 8, 4)


def test_rational_literal_term():
    node = parse_expr("3/2*J240*J140^2*J200")
    assert tri_degree(node) == (6, 12, 0)


def test_unknown_generator():
    with pytest.raises(UnknownGenerator):
        parse_expr("J999")


def test_syntax_error_position():
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr("J140 + * J200")
    assert "7" in str(info.value) or "position" in str(info.value)


def test_inhomogeneous_for_nu():
    parse_expr("J140 + J200")
    with pytest.raises(InhomogeneousExpression):
        parse_expr("J140 + J200", homogeneous=True)


names = st.sampled_from([jname(d) for d in GENERATOR_DEGREES])


@st.composite
def expressions(draw, depth=2):
    if depth == 0 or draw(st.booleans()):
        return draw(names) + ("^%d" % draw(st.integers(2, 3)) if draw(st.booleans()) else "")
    a = draw(expressions(depth=depth - 1))
    b = draw(expressions(depth=depth - 1))
    op = draw(st.sampled_from(["*", "+", "-"]))
    k = draw(st.sampled_from(["", "2*", "3/7*"]))
    return "%s(%s %s %s)" % (k, a, op, b)


@given(expressions())
def test_print_parse_round_trip(text):
    node = parse_expr(text)
    assert to_text(parse_expr(to_text(node))) == to_text(node)
