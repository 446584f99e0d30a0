import random
from fractions import Fraction as Q

import pytest

from atinf.algebra import bipoly_gcd
from atinf.algebra.fields import Budget
from atinf.chart import Infinity
from atinf.milnor import vanishing_cycles
from atinf.resolve import (
    LINF, Constant, Dicritical, IncompleteResolution, IrrationalCenter, Resolution, annotation_multiset, arrow_count,
    condition_R, dual_graph_dot, g_set, g_tilde, resolve_indeterminacy,
)

from conftest import generic, point, poly

EXAMPLES = ["y*(x*y-1)", "x*(y^2-1)", "y-(x*y-1)^2", "(x*y^2-y-1)^2+(y^2-1)^2", "y^5+x^2*y^3-y", "x - y^2",
            "y*(x^2*y-1)", "x*(y^2-2)"]

_cache = {}


def res(text, a=1, b=0, maps=("f",)):
    key = (text, a, b, maps)
    if key not in _cache:
        _cache[key] = resolve_indeterminacy(poly(text), point(text, a, b), maps=maps)
    return _cache[key]


# --- hand-derived resolutions ------------------------------------------------
# u(u - v^2)/v^3 for y(xy-1): blowing up the origin gives a pole of order one,
# the next centre gives a zero of order one, and the corner between them is
# dicritical of degree one.


def test_resolution_of_hyperbola_family():
    r = res("y*(x*y-1)")
    assert annotation_multiset(r) == ["0^1", "dicr:1", "inf^1"]
    assert arrow_count(r) == 1
    by_label = {E.annotation.label(): E.id for E in r.curves}
    pole, zero, dicr = by_label["inf^1"], by_label["0^1"], by_label["dicr:1"]
    edges = {frozenset(e) for e in r.neighbours()}
    # chain L_inf - pole - dicritical - zero
    assert edges == {frozenset((pole, LINF)), frozenset((dicr, pole)), frozenset((dicr, zero))}


def test_resolution_equisingular_family():
    r = res("x*(y^2-1)")
    assert annotation_multiset(r) == ["dicr:1", "dicr:1", "inf^1"]
    assert arrow_count(r) == 2


def test_resolution_with_tangency():
    r = res("y-(x*y-1)^2")
    assert annotation_multiset(r) == ["dicr:2", "inf^2"]
    assert arrow_count(r) == 2


def test_resolution_two_special_values():
    r = res("(x*y^2-y-1)^2+(y^2-1)^2")
    labels = annotation_multiset(r)
    assert "2^1" in labels and arrow_count(r) == 2


def test_annotation_kinds():
    for E in res("y*(x*y-1)").curves:
        assert isinstance(E.annotation, (Constant, Dicritical))
        if isinstance(E.annotation, Constant):
            assert E.annotation.m >= 1


# --- Condition R and g-tilde --------------------------------------------------


def test_condition_r_examples():
    assert not condition_R(res("y*(x*y-1)"), Q(0)).holds
    v = condition_R(res("y-(x*y-1)^2"), Q(0))
    assert not v.holds and v.reason == "NonTransverseContact"
    assert condition_R(res("x*(y^2-1)"), Q(7)).holds
    assert str(condition_R(res("x*(y^2-1)"), Q(7))) == "Holds"


@pytest.mark.parametrize("text", EXAMPLES)
def test_condition_r_matches_vanishing_cycles(text):
    g = generic(text)
    f, p = poly(text), point(text, 1, 0)
    for c in sorted(set(g.candidates) | {Q(0), Q(1), Q(-2, 3)}):
        nu = vanishing_cycles(f, p, c, g).nu
        assert condition_R(res(text), c).holds == (nu == 0), c


@pytest.mark.parametrize("text, expected", [("y*(x*y-1)", 1), ("y^5+x^2*y^3-y", 2), ("y*(x^2*y-1)", 1)])
def test_g_tilde_examples(text, expected):
    assert g_tilde(poly(text), point(text, 1, 0), Q(0)) == expected


def test_g_tilde_at_infinity_without_vanishing_components():
    # nu at infinity is 1 here but no gradient path escapes
    assert g_tilde(poly("x*(y^2-1)"), point("x*(y^2-1)", 1, 0), Infinity) == 0


@pytest.mark.parametrize("text", EXAMPLES)
def test_nu_bounds_g_tilde(text):
    f, p, g = poly(text), point(text, 1, 0), generic(text)
    for c in set(g.candidates) | {Q(3)}:
        assert vanishing_cycles(f, p, c, g).nu >= g_tilde(f, p, c)


# --- DOT ----------------------------------------------------------------------


def test_dot_is_byte_stable():
    a = dual_graph_dot(resolve_indeterminacy(poly("y*(x*y-1)"), point("y*(x*y-1)", 1, 0)))
    b = dual_graph_dot(resolve_indeterminacy(poly("y*(x*y-1)"), point("y*(x*y-1)", 1, 0)))
    assert a == b
    assert a.startswith("graph resolution {") and a.endswith("}\n")
    assert 'label="dicr:1"' in a and 'label="0^1"' in a and 'label="inf^1"' in a
    assert a.count("shape=point") == 1


def test_dot_of_empty_resolution():
    # every point at infinity is a base point of the pencil, so build the empty case by hand
    r = Resolution(point("y*(x*y-1)", 1, 0), poly("y*(x*y-1)"), [], [], [], ("f",))
    dot = dual_graph_dot(r)
    assert "E1" not in dot and "L_inf" in dot and "shape=point" not in dot


def test_dot_fiber_arrows():
    dot = dual_graph_dot(res("x*(y^2-1)"), fibers=(Q(7),))
    assert dot.count('label="f=7"') == 2


# --- structural invariants ----------------------------------------------------


@pytest.mark.parametrize("text", EXAMPLES)
def test_maps_are_coprime(text):
    for ch in res(text, maps=("f", "fx", "fy")).charts:
        for num, den in ch.maps.values():
            assert bipoly_gcd(num, den).is_constant()


@pytest.mark.parametrize("text", EXAMPLES)
def test_no_indeterminacy_remains(text):
    r = res(text, maps=("f", "fx", "fy"))
    assert r.complete
    for E in r.curves:
        for num, den in r.charts[E.main].maps.values():
            N0, D0 = num.restrict(0), den.restrict(0)
            common = [b0 for b0 in _rational_roots(N0) if not D0(b0)]
            assert all(E.is_blown(E.field(b0)) for b0 in common)
        for num, den in r.charts[E.aux].maps.values():
            if not num.constant_term() and not den.constant_term():
                assert E.blown_inf


def _rational_roots(p):
    from atinf.algebra.factor import rational_roots

    if p.is_zero() or p.degree() <= 0 or p.field.degree != 1:
        return []
    return rational_roots(p)


@pytest.mark.parametrize("text", EXAMPLES)
def test_transitions_agree(text):
    r = res(text, maps=("f", "fx", "fy"))
    rng = random.Random(text)
    for ch in r.charts:
        if ch.parent is None:
            continue
        parent = r.charts[ch.parent]
        K = ch.field
        A0, B0 = ch.center
        for name, (n, d) in ch.maps.items():
            pn, pd = (P.change_field(K) for P in parent.maps[name])
            for _ in range(3):
                a, b = K(Q(rng.randint(-9, 9), rng.randint(1, 5))), K(Q(rng.randint(-9, 9), rng.randint(1, 5)))
                X, Y = (a + A0, a * b + B0) if ch.kind == "main" else (a * b + A0, b + B0)
                assert n(a, b) * pd(X, Y) == pn(X, Y) * d(a, b)


@pytest.mark.parametrize("text", EXAMPLES)
def test_dual_graph_connected(text):
    r = res(text)
    adj = {LINF: set()}
    for E in r.curves:
        adj.setdefault(E.id, set())
    for a, b in r.neighbours():
        adj[a].add(b)
        adj[b].add(a)
    seen, stack = {LINF}, [LINF]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    assert seen == set(adj)


def test_conjugate_centres():
    # x(y^2 - 2): the two dicritical curves sit over the conjugate points b^2 = 1/2
    r = res("x*(y^2-2)")
    assert annotation_multiset(r) == ["dicr:1", "dicr:1", "inf^1"]
    assert [E.weight for E in r.curves] == [1, 2]
    assert 'label="dicr:1 x2"' in dual_graph_dot(r)
    assert condition_R(r, Q(3)).holds


def test_budget_obstruction():
    f, p = poly("x*(y^2-2)"), point("x*(y^2-2)", 1, 0)
    r = resolve_indeterminacy(f, p, budget=Budget(max_degree=1))
    assert not r.complete and r.obstructions[0].factor.degree() == 2
    with pytest.raises(IncompleteResolution):
        condition_R(r, Q(3))
    with pytest.raises(IrrationalCenter):
        g_set(r, Q(3))
