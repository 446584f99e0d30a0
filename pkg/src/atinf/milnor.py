"""Intersection multiplicities at the origin, Milnor numbers and vanishing cycles."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra.bipoly import BiPoly, bipoly_divide, bipoly_gcd
from .algebra.factor import irreducible_factors, rational_roots
from .algebra.fields import QQ, ExtensionField, FunctionField, RatFunc, is_rational, to_rational
from .algebra.unipoly import UniPoly
from .chart import Infinity, Symbolic, Value, local_germ, point_multiplicity

INFINITE = math.inf


class BothZero(ValueError):
    pass


class NonIsolatedForAllT(ArithmeticError):
    pass


class NonIsolatedAtC(ArithmeticError):
    def __init__(self, message, c=None):
        super().__init__(message)
        self.c = c


# ---------------------------------------------------------------------------
# Fulton's algorithm


def _pure_u(F):
    """Coefficients of F(u, 0) as {i: c}."""
    return {i: c for (i, j), c in F.terms.items() if j == 0}


def _normalise(F, observe):
    """Divide out the scalar content; keeps coefficient growth in check."""
    if not F.terms:
        return F
    fld = F.field
    if fld == QQ:
        num = 0
        den = 1
        for c in F.terms.values():
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        k = Fraction(den, num)
        return F if k == 1 else F * k
    if isinstance(fld, FunctionField):
        from .algebra.unipoly import uni_gcd

        g = None
        l = None
        for c in F.terms.values():
            g = c.num if g is None else uni_gcd(g, c.num)
            l = c.den if l is None else l * c.den // uni_gcd(l, c.den)
        lead = F.sorted_terms()[0][1].num.lc()
        k = fld(l) / fld(g * lead)
        if observe is not None:
            observe(k)
        return F * k
    # number fields: make the leading coefficient one
    return F * (fld.one / F.sorted_terms()[0][1])


def intersection_multiplicity(F, G, observe=None):
    """I_(0,0)(F, G); math.inf when F and G share a component through the origin.

    ``observe`` is called with every coefficient whose nonvanishing steers the
    computation, so callers over K(t) can collect the exceptional values of t.
    """
    if F.is_zero() and G.is_zero():
        raise BothZero("both curves are zero")
    if F.is_zero() or G.is_zero():
        H = G if F.is_zero() else F
        c = H.constant_term()
        if c:
            _see(observe, c)
            return 0
        return INFINITE
    g = bipoly_gcd(F, G)
    if not g.is_constant():
        if not g.constant_term():
            return INFINITE
        _see(observe, g.constant_term())
        F, G = bipoly_divide(F, g), bipoly_divide(G, g)
        for c in list(F.terms.values()) + list(G.terms.values()):
            _see_den(observe, c)
    return _fulton(F, G, observe)


def _see(observe, c):
    if observe is not None:
        observe(c)


def _see_den(observe, c):
    if observe is not None and isinstance(c, RatFunc) and c.den.degree() > 0:
        observe(c)


def _fulton(F, G, observe):
    total = 0
    F, G = _normalise(F, observe), _normalise(G, observe)
    while True:
        if F.is_zero() or G.is_zero():
            return INFINITE
        for H in (F, G):
            c = H.constant_term()
            if c:
                _see(observe, c)
                return total
        pf, pg = _pure_u(F), _pure_u(G)
        if not pf and not pg:
            # both divisible by v: common component through the origin
            return INFINITE
        if not pf or not pg:
            if not pf:
                F, G, pf, pg = G, F, pg, pf
            # G = v * G1 and I(v, F) = ord_u F(u, 0)
            k = min(pf)
            _see(observe, pf[k])
            total += k
            G = G.div_monomial(0, 1)
            G = _normalise(G, observe)
            continue
        r, s = max(pf), max(pg)
        _see(observe, pf[r])
        _see(observe, pg[s])
        if r > s:
            F, G, pf, pg, r, s = G, F, pg, pf, s, r
        # cancel the leading pure-u term of G against F
        G = G * pf[r] - F.mul_monomial(s - r, 0) * pg[s]
        G = _normalise(G, observe)


# ---------------------------------------------------------------------------
# Milnor numbers


def milnor_number(germ):
    """mu = I(g_u, g_v) at the origin (for a BiPoly or a Germ)."""
    if isinstance(germ, BiPoly):
        if germ.is_zero():
            raise ValueError("zero germ")
        return intersection_multiplicity(germ.diff(0), germ.diff(1))
    a, b = germ.partials()
    return intersection_multiplicity(a, b)


@dataclass(frozen=True)
class CandidateClass:
    """An irreducible non-linear factor over QQ whose roots are special values of t."""

    poly: UniPoly

    @property
    def degree(self):
        return self.poly.degree()


@dataclass(frozen=True)
class GenericMilnorResult:
    mu_gen: int
    candidates: tuple  # sorted Fractions
    classes: tuple = ()  # CandidateClass entries


@dataclass(frozen=True)
class VanishingCycles:
    nu: int
    mu_c: object = None
    mu_gen: int | None = None


class _Harvest:
    def __init__(self):
        self.polys = set()

    def __call__(self, c):
        if isinstance(c, RatFunc):
            for p in (c.num, c.den):
                if p.degree() > 0:
                    self.polys.add(p.monic())

    def split(self):
        roots = set()
        classes = set()
        for p in self.polys:
            roots.update(rational_roots(p))
            for fac, _ in irreducible_factors(p):
                if fac.degree() >= 2:
                    classes.add(fac)
        cls = sorted(classes, key=lambda q: (q.degree(), q.coeffs))
        return tuple(sorted(roots)), tuple(CandidateClass(q) for q in cls)


def milnor_generic(f, p):
    """mu_{p,gen} over QQ(t) with the set of values of t where the computation may jump.

    Any value of t at which mu jumps must be caught by every valid run of the
    intersection algorithm, so the harvests of two runs (original and swapped
    coordinates) are intersected to discard incidental values.
    """
    germ = local_germ(f, p, Symbolic)
    a, b = germ.partials()
    runs = []
    for F, G in ((a, b), (a.swap(), b.swap())):
        harvest = _Harvest()
        mu = intersection_multiplicity(F, G, observe=harvest)
        if mu == INFINITE:
            raise NonIsolatedForAllT(f"generic germ at {p.label()} has a non-isolated singularity")
        runs.append((mu, harvest.split()))
    assert runs[0][0] == runs[1][0], "intersection multiplicity depends on coordinates"
    (mu, (r1, c1)), (_, (r2, c2)) = runs
    roots = tuple(sorted(set(r1) & set(r2)))
    classes = tuple(c for c in c1 if c in set(c2))
    return GenericMilnorResult(mu, roots, classes)


def milnor_at(f, p, c):
    """mu_{p,c} for a rational (or number-field) value c."""
    return milnor_number(local_germ(f, p, Value(c)))


def vanishing_cycles(f, p, c, generic=None):
    """nu_{p,c} = mu_{p,c} - mu_{p,gen}."""
    generic = generic or milnor_generic(f, p)
    mu_c = milnor_at(f, p, c)
    if mu_c == INFINITE:
        raise NonIsolatedAtC(f"f - {c} has a multiple component through {p.label()}", c)
    nu = mu_c - generic.mu_gen
    assert nu >= 0, "semicontinuity violated"
    return VanishingCycles(nu, mu_c, generic.mu_gen)


def class_field(cls, name="c"):
    """Number field QQ[c]/(m) for a candidate class."""
    return ExtensionField(QQ, cls.poly.with_var(name), name)


def vanishing_cycles_class(f, p, cls, generic=None):
    """nu at one root of an irreducible class (the same for every conjugate)."""
    K = class_field(cls)
    return vanishing_cycles(f, p, K.gen(), generic)


def degree_bound(f, p):
    return (p.d_p - 1) * (f.total_degree() - 1)


def infinity_multiplicity(f, p):
    """I(g_u, s g_v) at s = 0, computed by the intersection algorithm."""
    return milnor_number(local_germ(f, p, Infinity))


def vanishing_cycles_infinity(f, p, generic=None):
    """nu_{p,inf} = (d_p - 1)(d - 1) - mu_{p,gen}."""
    generic = generic or milnor_generic(f, p)
    bound = infinity_multiplicity(f, p)
    assert bound == degree_bound(f, p), "intersection at t = inf disagrees with (d_p-1)(d-1)"
    nu = bound - generic.mu_gen
    assert nu >= 0
    return VanishingCycles(nu, bound, generic.mu_gen)


__all__ = [
    "BothZero", "CandidateClass", "GenericMilnorResult", "INFINITE", "NonIsolatedAtC", "NonIsolatedForAllT",
    "VanishingCycles", "class_field", "degree_bound", "infinity_multiplicity", "intersection_multiplicity",
    "milnor_at", "milnor_generic", "milnor_number", "vanishing_cycles", "vanishing_cycles_class",
    "vanishing_cycles_infinity",
]
