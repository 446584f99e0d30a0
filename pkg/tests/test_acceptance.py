"""Acceptance criteria 1-8.

Every test here carries ``criterion(n)``; conftest turns the outcomes into one
PASS/FAIL line per criterion at the end of the run.  Criterion 7 also collects
the property tests of the module suites.
"""
import random
from fractions import Fraction as Q

import pytest

from atinf.affine import total_milnor_number
from atinf.chart import Infinity, LinearChange
from atinf.milnor import infinity_multiplicity, milnor_at, vanishing_cycles, vanishing_cycles_infinity
from atinf.polar import candidate_values_at_infinity, nu_via_polar
from atinf.report import Options, analyze
from atinf.resolve import (
    annotation_multiset, arrow_count, condition_R, dual_graph_dot, g_tilde, resolve_indeterminacy,
)

from conftest import generic, point, poly

INF = Infinity
crit = pytest.mark.criterion

# (polynomial, values of c at [1,0,0]) for every row named in criterion 1
ROWS = {
    "y*(x*y-1)": [Q(0), Q(1), Q(-1), Q(1, 2), INF],
    "y*(x^2*y-1)": [Q(0), INF],
    "y*(x^3*y-1)": [Q(0), INF],
    "x*(y^2-1)": [Q(0), Q(1), Q(5), INF],
    "(x*y^2-y-1)^2+(y^2-1)^2": [Q(1), Q(2), INF],
    "x - y^2": [INF],
    "y^3+x*y+x": [INF],
    "y^4+x^2*y+x": [INF],
    "y^5+x^3*y+x": [INF],
    "y-(x*y-1)^2": [Q(0), INF],
    "y^5+x^2*y^3-y": [Q(0), INF],
    "x^2*y+x*y^2+x^5*y^3+x^3*y^5": [INF],
}
PAIRS = [(text, c) for text, cs in ROWS.items() for c in cs]
FINITE = [(text, c) for text, c in PAIRS if c is not INF]

_res = {}


def nu(text, c):
    f, p, g = poly(text), point(text, 1, 0), generic(text)
    if c is INF:
        return vanishing_cycles_infinity(f, p, g).nu
    return vanishing_cycles(f, p, c, g).nu


def resolution(text):
    if text not in _res:
        _res[text] = resolve_indeterminacy(poly(text), point(text, 1, 0))
    return _res[text]


def pid(x):
    return str(x)


# --- 1. golden examples -------------------------------------------------------


@crit(1)
def test_golden_hyperbola_family():
    text = "y*(x*y-1)"
    assert generic(text).mu_gen == 2
    assert nu(text, Q(0)) == 1
    assert [nu(text, c) for c in (Q(1), Q(-1), Q(1, 2))] == [0, 0, 0]
    assert nu(text, INF) == 0
    assert g_tilde(poly(text), point(text, 1, 0), Q(0)) == 1
    r = analyze(poly(text))
    assert list(r.sigma_fin) == [] and list(r.sigma_inf) == [Q(0)]


@crit(1)
@pytest.mark.parametrize("a", [2, 3])
def test_golden_power_family(a):
    text = f"y*(x^{a}*y-1)"
    assert generic(text).mu_gen == a + 1
    assert milnor_at(poly(text), point(text, 1, 0), Q(0)) == 2 * a + 1
    assert nu(text, Q(0)) == a


@crit(1)
def test_golden_equisingular():
    text = "x*(y^2-1)"
    for c in (Q(0), Q(1), Q(5)):
        assert milnor_at(poly(text), point(text, 1, 0), c) == 1
    g = generic(text)
    rng = random.Random(text)
    for c in list(g.candidates) + [Q(rng.randint(-99, 99), rng.randint(1, 9)) for _ in range(5)]:
        assert nu(text, c) == 0
    assert nu(text, INF) == 1


@crit(1)
def test_golden_two_values():
    text = "(x*y^2-y-1)^2+(y^2-1)^2"
    assert generic(text).mu_gen == 15
    assert (nu(text, Q(1)), nu(text, Q(2)), nu(text, INF)) == (2, 1, 0)


@crit(1)
def test_golden_parabola():
    assert nu("x - y^2", INF) == 1


@crit(1)
@pytest.mark.parametrize("a", [3, 4, 5])
def test_golden_infinity_family(a):
    text = f"y^{a}+x^{a - 2}*y+x"
    assert nu(text, INF) == a * a - 2 * a


@crit(1)
def test_golden_tangency():
    text = "y-(x*y-1)^2"
    assert nu(text, Q(0)) == 1
    assert str(condition_R(resolution(text), Q(0))) == "Fails(NonTransverseContact)"


@crit(1)
def test_golden_two_paths():
    text = "y^5+x^2*y^3-y"
    assert nu(text, Q(0)) == 2
    assert g_tilde(poly(text), point(text, 1, 0), Q(0)) == 2


@crit(1)
def test_golden_one_path_two_cycles():
    text = "y*(x^2*y-1)"
    assert nu(text, Q(0)) == 2
    assert g_tilde(poly(text), point(text, 1, 0), Q(0)) == 1


@crit(1)
def test_golden_infinity_value():
    assert nu("x^2*y+x*y^2+x^5*y^3+x^3*y^5", INF) == 1


# --- 2. dual oracle agreement -------------------------------------------------


@crit(2)
@pytest.mark.parametrize("text", list(ROWS), ids=pid)
def test_polar_agrees(text):
    f, p = poly(text), point(text, 1, 0)
    cands = candidate_values_at_infinity(f, p)
    for c in ROWS[text]:
        assert nu_via_polar(f, p, c, candidates=cands) == nu(text, c), c


# --- 3. identities ------------------------------------------------------------


@crit(3)
@pytest.mark.parametrize("text", list(ROWS), ids=pid)
def test_degree_identity_and_semicontinuity(text):
    f, p, g = poly(text), point(text, 1, 0), generic(text)
    bound = (p.d_p - 1) * (f.total_degree() - 1)
    # independent derivations of nu_inf: polar count and the t = inf intersection number
    assert g.mu_gen + nu_via_polar(f, p, INF) == bound
    assert infinity_multiplicity(f, p) == bound
    rng = random.Random(f"semi {text}")
    values = list(g.candidates) + [Q(rng.randint(-99, 99), rng.randint(1, 9)) for _ in range(5)]
    for c in values:
        assert milnor_at(f, p, c) >= g.mu_gen


# --- 4. M <=> R for finite c -------------------------------------------------


@crit(4)
@pytest.mark.parametrize("text, c", FINITE, ids=pid)
def test_condition_r_matches_nu(text, c):
    assert condition_R(resolution(text), c).holds == (nu(text, c) == 0)


# --- 5. nu >= g~ -------------------------------------------------------------


@crit(5)
@pytest.mark.parametrize("text", list(ROWS), ids=pid)
def test_nu_bounds_g_tilde(text):
    f, p = poly(text), point(text, 1, 0)
    for c in ROWS[text]:
        assert nu(text, c) >= g_tilde(f, p, c), c


# --- 6. figures -----------------------------------------------------------------
# annotations derived by hand from the local forms u(u-v^2)/v^3, (u^2-v^2)/v^3 and
# (uv^3-(u-v^2)^2)/v^4


FIGURES = {
    "y*(x*y-1)": (["0^1", "dicr:1", "inf^1"], 1),
    "x*(y^2-1)": (["dicr:1", "dicr:1", "inf^1"], 2),
    "y-(x*y-1)^2": (["dicr:2", "inf^2"], 2),
}


@crit(6)
@pytest.mark.parametrize("text", list(FIGURES), ids=pid)
def test_figure(text):
    labels, arrows = FIGURES[text]
    r = resolution(text)
    assert annotation_multiset(r) == labels
    assert arrow_count(r) == arrows
    fresh = resolve_indeterminacy(poly(text), point(text, 1, 0))
    assert dual_graph_dot(fresh) == dual_graph_dot(r)


# --- 7. properties (with the marked module tests) ----------------------------


@crit(7)
@pytest.mark.parametrize("text", list(ROWS), ids=pid)
def test_specialization(text):
    f, p, g = poly(text), point(text, 1, 0), generic(text)
    rng = random.Random(f"spec {text}")
    done = 0
    while done < 3:
        c = Q(rng.randint(-99, 99), rng.randint(1, 9))
        if c not in g.candidates:
            assert milnor_at(f, p, c) == g.mu_gen
            done += 1


@crit(7)
@pytest.mark.parametrize("text", list(ROWS), ids=pid)
def test_mu_total_invariance(text):
    f = poly(text)
    base = total_milnor_number(f)
    rng = random.Random(f"mu {text}")
    for _ in range(3):
        # a = +-1 and d = a(1 + bc) give determinant one
        a, b, c = rng.choice([1, -1]), rng.randint(-3, 3), rng.randint(-3, 3)
        M = ((a, b), (c, a * (1 + b * c)))
        assert total_milnor_number(LinearChange(M).apply(f)) == base


# --- 8. global identity -------------------------------------------------------


@crit(8)
def test_global_invariants():
    r = analyze(poly("y*(x*y-1)"))
    inv = r.invariants
    assert (inv.mu, inv.lam, inv.rank_h1) == (0, 1, 1)
    assert not inv.lower_bound
