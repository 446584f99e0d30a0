import random
from fractions import Fraction as Q

import pytest

from atinf.affine import NonIsolatedCriticalLocus, affine_critical_values, global_invariants
from atinf.chart import LinearChange, points_at_infinity
from atinf.milnor import vanishing_cycles

from conftest import generic, point, poly


def test_no_critical_points():
    a = affine_critical_values(poly("y*(x*y-1)"))
    assert a.sigma_fin == () and a.mu_total == 0


def test_single_morse_point():
    a = affine_critical_values(poly("x^2 + y^2"))
    assert a.rational_values == ((Q(0), 1),) and a.mu_total == 1


def test_three_morse_points():
    # f_x = 4x(x^2 - 1), f_y = 2y: points (0,0) with value 1 and (+-1,0) with value 0
    a = affine_critical_values(poly("(x^2-1)^2 + y^2"))
    assert a.mu_total == 3
    assert a.rational_values == ((Q(0), 2), (Q(1), 1))
    assert [(p.x, p.y, p.mu) for p in a.points] == [(-1, 0, 1), (0, 0, 1), (1, 0, 1)]


def test_degenerate_point():
    a = affine_critical_values(poly("x^3 + y^2"))
    assert a.rational_values == ((Q(0), 2),) and a.mu_total == 2


def test_irrational_points_share_a_rational_value():
    # (+-sqrt 2, 0) both have value 0
    a = affine_critical_values(poly("(x^2-2)^2 + y^2"))
    assert a.mu_total == 3
    assert dict(a.rational_values) == {Q(0): 0, Q(4): 1}
    assert a.residual_mu == 2 and sum(c.count for c in a.classes) == 2


def test_irrational_values():
    # critical points where 3x^2 = 1: values -+2/(3 sqrt 3), roots of 27t^2 - 4
    a = affine_critical_values(poly("x^3 - x + y^2"))
    assert a.sigma_fin == ()
    ((phi, deg),) = a.irrational_classes
    assert deg == 2 and list((phi * 27).coeffs) == [-4, 0, 27]


def test_eliminant_contains_values():
    for text in ["(x^2-1)^2 + y^2", "x^3 - 3*x*y + y^3", "x^2 + y^2"]:
        a = affine_critical_values(poly(text))
        for c in a.sigma_fin:
            assert a.eliminant(c) == 0
        for p in a.points:
            assert p.mu > 0


def test_non_isolated():
    with pytest.raises(NonIsolatedCriticalLocus):
        affine_critical_values(poly("x^2"))
    with pytest.raises(NonIsolatedCriticalLocus):
        affine_critical_values(poly("(x*y-1)^2"))


def test_constant_rejected():
    with pytest.raises(ValueError):
        affine_critical_values(poly("3"))


UNIMODULAR = [((1, 1), (0, 1)), ((2, 1), (1, 1)), ((1, 0), (-3, 1)), ((0, 1), (-1, 2)), ((1, 2), (1, 3))]


@pytest.mark.parametrize(
    "text", ["(x^2-1)^2 + y^2", "x^3 - 3*x*y + y^3", "x^2 + y^2", "y*(x*y-1)", "x^3 - x + y^2", "x*(y^2-1)"]
)
@pytest.mark.criterion(7)
def test_mu_total_invariant_under_coordinate_change(text):
    f = poly(text)
    base = affine_critical_values(f).mu_total
    for M in random.Random(text).sample(UNIMODULAR, 3):
        assert affine_critical_values(LinearChange(M).apply(f)).mu_total == base


def _rows(text):
    f = poly(text)
    rows = []
    for p in points_at_infinity(f)[0]:
        g = generic(text, p.a, p.b)
        for c in g.candidates:
            rows.append((p, c, vanishing_cycles(f, p, c, g).nu))
    return rows


@pytest.mark.parametrize("text, mu, lam", [("y*(x*y-1)", 0, 1), ("x^2 + y^2", 1, 0), ("y*(x^2*y-1)", 0, 2)])
def test_global_invariants(text, mu, lam):
    f = poly(text)
    inv = global_invariants(f, _rows(text), residual_points=points_at_infinity(f)[1])
    assert (inv.mu, inv.lam, inv.rank_h1) == (mu, lam, mu + lam)
    assert not inv.lower_bound


def test_lower_bound_flag():
    # (x^2 + y^2)^2 + x: a doubled conjugate pair at infinity is not analyzed
    f = poly("(x^2+y^2)^2 + x")
    inv = global_invariants(f, [], residual_points=points_at_infinity(f)[1])
    assert inv.lower_bound and inv.notes
