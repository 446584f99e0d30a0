import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from atinf.algebra import QQ, BiPoly, FunctionField
from atinf.milnor import (
    INFINITE, BothZero, NonIsolatedAtC, intersection_multiplicity, milnor_at, milnor_number, vanishing_cycles,
    vanishing_cycles_infinity,
)
from atinf.parse import parse_poly

from conftest import generic, point, poly


def uv(text):
    return parse_poly(text).rename(("u", "v"))


def test_axiom_cases():
    assert intersection_multiplicity(uv("x"), uv("y")) == 1
    assert intersection_multiplicity(uv("x^2"), uv("y")) == 2
    assert intersection_multiplicity(uv("x + 1"), uv("y")) == 0
    assert intersection_multiplicity(uv("x*y"), uv("x*(y+x)")) == INFINITE


def test_both_zero():
    with pytest.raises(BothZero):
        intersection_multiplicity(uv("0"), uv("0"))


def test_generic_germ_over_function_field():
    T = FunctionField("t")
    t = BiPoly.const(T, T.gen(), ("u", "v"))
    g = uv("x^2 - x*y^2").map_coeffs(T, T) - t * uv("y^3").map_coeffs(T, T)
    assert milnor_number(g) == 2


def test_milnor_number_examples():
    assert milnor_number(uv("x^2 - x*y^2")) == 3  # A3
    for c in (Q(0), Q(1), Q(-5, 2)):
        assert milnor_number(uv("x^2 - y^2") - uv("y^3") * c) == 1
    assert milnor_number(uv("x^2*y")) == INFINITE


def test_generic_examples():
    g = generic("y*(x*y-1)")
    assert g.mu_gen == 2 and Q(0) in g.candidates
    g = generic("(x*y^2-y-1)^2+(y^2-1)^2")
    assert g.mu_gen == 15 and {Q(1), Q(2)} <= set(g.candidates)
    assert generic("y*(x^2*y-1)").mu_gen == 3


def test_vanishing_cycles_examples():
    assert vanishing_cycles(poly("y*(x*y-1)"), point("y*(x*y-1)", 1, 0), Q(0)).nu == 1
    assert vanishing_cycles(poly("x*(y^2-1)"), point("x*(y^2-1)", 1, 0), Q(5)).nu == 0
    f = "y*(x^2*y-1)"
    assert vanishing_cycles(poly(f), point(f, 1, 0), Q(0), generic(f)).nu == 2


def test_vanishing_cycles_infinity_examples():
    assert vanishing_cycles_infinity(poly("x - y^2"), point("x - y^2", 1, 0)).nu == 1
    f = "y^4 + x^2*y + x"
    assert vanishing_cycles_infinity(poly(f), point(f, 1, 0), generic(f)).nu == 8
    f = "y*(x*y-1)"
    for a, b in ((1, 0), (0, 1)):
        assert vanishing_cycles_infinity(poly(f), point(f, a, b), generic(f, a, b)).nu == 0


def test_non_isolated_at_c():
    # the doubled component xy - 1 passes through [1,0,0]
    f = "(x*y - 1)^2*y"
    with pytest.raises(NonIsolatedAtC):
        vanishing_cycles(poly(f), point(f, 1, 0), Q(0))


@pytest.mark.criterion(7)
@pytest.mark.parametrize("text", ["y*(x*y-1)", "(x*y^2-y-1)^2+(y^2-1)^2", "y*(x^2*y-1)", "x*(y^2-1)", "x - y^2"])
def test_specialization_outside_candidates(text):
    g = generic(text)
    rng = random.Random(text)
    tried = 0
    while tried < 3:
        c = Q(rng.randint(-60, 60), rng.randint(1, 9))
        if c in g.candidates:
            continue
        assert milnor_at(poly(text), point(text, 1, 0), c) == g.mu_gen
        tried += 1


@pytest.mark.parametrize("text", ["y*(x*y-1)", "(x*y^2-y-1)^2+(y^2-1)^2", "y*(x^2*y-1)"])
def test_semicontinuity_on_candidates(text):
    g = generic(text)
    for c in g.candidates:
        assert milnor_at(poly(text), point(text, 1, 0), c) >= g.mu_gen


# --- Fulton axioms on random small germs ------------------------------------

coef = st.integers(-3, 3)
germs = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), coef, max_size=5).map(
    lambda d: BiPoly(QQ, {k: Q(v) for k, v in d.items()}, ("u", "v"))
)
# force the origin onto the curve so the numbers are interesting
through_origin = germs.map(lambda g: g - BiPoly.const(QQ, g.constant_term(), ("u", "v"))).filter(
    lambda g: not g.is_zero()
)


@pytest.mark.criterion(7)
@settings(max_examples=200, deadline=None)
@given(through_origin, through_origin)
def test_symmetry(F, G):
    assert intersection_multiplicity(F, G) == intersection_multiplicity(G, F)


@pytest.mark.criterion(7)
@settings(max_examples=200, deadline=None)
@given(through_origin, germs, germs)
def test_additivity(F, G, H):
    if G.is_zero() or H.is_zero():
        return
    a = intersection_multiplicity(F, G)
    b = intersection_multiplicity(F, H)
    assert intersection_multiplicity(F, G * H) == a + b


@pytest.mark.criterion(7)
@settings(max_examples=200, deadline=None)
@given(through_origin, through_origin, germs)
def test_invariance_under_adding_multiples(F, G, H):
    assert intersection_multiplicity(F, G + H * F) == intersection_multiplicity(F, G)
