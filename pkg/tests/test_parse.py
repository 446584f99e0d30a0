from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from atinf.algebra import QQ, BiPoly
from atinf.parse import (
    DepthExceeded, ExponentNotInteger, ParseError, SyntaxError as PolySyntaxError, format_poly, parse_poly,
)

x, y = BiPoly.gens(QQ)


def test_paper_examples():
    assert parse_poly("y*(x*y-1)") == x * y * y - y
    f = parse_poly("(x*y^2 - y - 1)^2 + (y^2 - 1)^2")
    assert f.total_degree() == 6
    assert f.leading_form() == x * x * y ** 4


def test_cancellation():
    assert parse_poly("x - x").is_zero()


def test_precedence():
    assert parse_poly("-x^2") == -(x * x)
    assert parse_poly("2^3^2") == BiPoly.const(QQ, 512)  # right associative
    assert parse_poly("1 - x - y") == 1 - x - y
    assert parse_poly("2*x^2*3") == 6 * x * x
    assert parse_poly("--x") == x


def test_rational_literals():
    assert parse_poly("3/4*x") == x * Q(3, 4)
    assert parse_poly("-7/3") == BiPoly.const(QQ, Q(-7, 3))
    with pytest.raises(PolySyntaxError):
        parse_poly("x/2")  # '/' only joins two integer literals


def test_format_examples():
    assert format_poly(x * y * y - y) == "x*y^2 - y"
    assert format_poly(BiPoly(QQ, {})) == "0"
    assert format_poly(x * Q(5, 6)) == "5/6*x"
    assert format_poly(-x + 1) == "-x + 1"


@pytest.mark.parametrize(
    "text, offset",
    [("x*y+", 4), ("2x", 1), ("((x)", 4), ("x**2", 2), ("", 0), ("x + z", 4), ("1/0", 2)],
)
def test_syntax_errors_are_located(text, offset):
    with pytest.raises(PolySyntaxError) as info:
        parse_poly(text)
    assert info.value.offset == offset


@pytest.mark.parametrize("text", ["x^-1", "x^(2)", "x^1/2", "x^y"])
def test_exponent_not_integer(text):
    with pytest.raises(ExponentNotInteger):
        parse_poly(text)


def test_depth_limit():
    with pytest.raises(DepthExceeded):
        parse_poly("(" * 70 + "x" + ")" * 70)
    assert parse_poly("(" * 60 + "x" + ")" * 60) == x


def test_long_flat_sum_is_fine():
    f = parse_poly(" + ".join(["x"] * 5000))
    assert f == x * 5000


@settings(max_examples=300, deadline=None)
@given(st.text(alphabet="xy0123456789+-*/^() ", max_size=20))
def test_garbage_never_crashes(text):
    try:
        parse_poly(text)
    except ParseError as exc:
        assert 0 <= exc.offset <= len(text.encode())
    except ZeroDivisionError:  # pragma: no cover
        pytest.fail("division by zero escaped as a non-parse error")


monomials = st.tuples(st.integers(0, 6), st.integers(0, 6))
coeffs = st.builds(Q, st.integers(1, 50) | st.integers(-50, -1), st.integers(1, 12))
random_polys = st.dictionaries(monomials, coeffs, max_size=8).map(lambda d: BiPoly(QQ, dict(d)))


@pytest.mark.criterion(7)
@settings(max_examples=1000, deadline=None)
@given(random_polys)
def test_round_trip(p):
    assert parse_poly(format_poly(p)) == p
