"""Critical points of f in the affine plane and the global invariants mu, lambda, rank H1."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra.bipoly import BiPoly, bipoly_gcd, resultant
from .algebra.factor import irreducible_factors, minimal_polynomial
from .algebra.fields import QQ, DEFAULT_BUDGET, ExtensionField, NeedsExtension
from .algebra.unipoly import UniPoly, uni_gcd
from .milnor import INFINITE, intersection_multiplicity


class NonIsolatedCriticalLocus(ArithmeticError):
    pass


class IncompleteAnalysis(ArithmeticError):
    pass


@dataclass(frozen=True)
class CriticalPoint:
    x: Fraction
    y: Fraction
    value: Fraction
    mu: int


@dataclass(frozen=True)
class CriticalClass:
    """Conjugate critical points whose value has minimal polynomial ``value_poly``.

    ``count`` is the number of geometric points in the class.  Local Milnor
    numbers at such points are only known in aggregate.
    """

    value_poly: UniPoly
    count: int


@dataclass(frozen=True)
class AffineCriticalData:
    eliminant: UniPoly
    rational_values: tuple  # ((c, mu of rational critical points with value c), ...)
    irrational_classes: tuple  # ((irreducible factor of the eliminant, degree), ...)
    mu_total: object  # int or INFINITE
    points: tuple = ()  # rational CriticalPoints
    classes: tuple = ()  # CriticalClasses of non-rational points
    residual_mu: int = 0  # mu_total minus the rational points' share
    unconfirmed: tuple = ()  # eliminant factors the exact check could not settle

    @property
    def sigma_fin(self):
        return tuple(c for c, _ in self.rational_values)


@dataclass(frozen=True)
class GlobalInvariants:
    mu: object
    lam: int
    rank_h1: object
    lower_bound: bool = False
    notes: tuple = ()


def _sheared(f):
    """f(x + s y, y) for the first s making both partials monic in y (up to a constant)."""
    x, y = BiPoly.gens(f.field, f.vars)
    for s in (0, 1, -1, 2, -2, 3, -3, 5, 7, 11):
        g = f.compose(x + y * s, y) if s else f
        P, Q = g.diff(0), g.diff(1)
        if all(H.coeff(0, H.total_degree()) for H in (P, Q)):
            return g, s
    raise ArithmeticError("no shear makes the partial derivatives monic")


def _check_isolated(f):
    """False when a partial derivative is a nonzero constant (no critical points at all)."""
    if f.total_degree() < 1:
        raise ValueError("constant polynomial")
    fx, fy = f.diff(0), f.diff(1)
    if fx.is_zero() or fy.is_zero():
        other = fy if fx.is_zero() else fx
        if other.total_degree() > 0:
            raise NonIsolatedCriticalLocus("a partial derivative vanishes identically")
    elif not bipoly_gcd(fx, fy).is_constant():
        raise NonIsolatedCriticalLocus("f_x and f_y have a common factor")
    return not any(H.is_constant() for H in (fx, fy))


def _critical_resultant(f):
    g, s = _sheared(f)
    P, Q = g.diff(0), g.diff(1)
    return g, s, P, Q, resultant(P, Q, 1).restrict(1).with_var("x")


def total_milnor_number(f):
    """Sum of the local Milnor numbers of f over all critical points in the plane."""
    if not _check_isolated(f):
        return 0
    return _critical_resultant(f)[-1].degree()


def affine_critical_values(f, budget=DEFAULT_BUDGET):
    if not _check_isolated(f):
        return AffineCriticalData(UniPoly(QQ, (Fraction(1),), "t"), (), (), 0)

    g, s, P, Q, R = _critical_resultant(f)
    mu_total = R.degree()
    points = []
    values = {}
    classes = []
    unsettled = False
    for phi, _ in irreducible_factors(R):
        if phi.degree() == 1:
            x0 = -phi.coeff(0) / phi.lc()
            h = uni_gcd(P.restrict(0, x0), Q.restrict(0, x0))
            for psi, _ in irreducible_factors(h):
                if psi.degree() == 1:
                    y0 = -psi.coeff(0) / psi.lc()
                    c = g(x0, y0)
                    mu = intersection_multiplicity(P.translate(x0, y0), Q.translate(x0, y0))
                    points.append(CriticalPoint(x0 + s * y0, y0, c, mu))
                    values.setdefault(c, 0)
                    values[c] += mu
                else:
                    unsettled |= not _class_over(g, P, Q, x0, psi, QQ, classes, budget)
        else:
            try:
                K = ExtensionField(QQ, phi.with_var("xa"), "xa", budget=budget)
            except NeedsExtension:
                unsettled = True
                continue
            a = K.gen()
            h = uni_gcd(P.change_field(K).restrict(0, a), Q.change_field(K).restrict(0, a))
            for psi, _ in irreducible_factors(h, budget):
                if psi.degree() == 1:
                    b = -psi.coeff(0) / psi.lc()
                    classes.append(CriticalClass(minimal_polynomial(g.change_field(K)(a, b), "t"), K.degree))
                else:
                    unsettled |= not _class_over(g.change_field(K), P.change_field(K), Q.change_field(K), a,
                                                 psi, K, classes, budget)

    E = _eliminant(g, P, R)
    rational_values = []
    irr = []
    unconfirmed = []
    class_polys = {c.value_poly for c in classes}
    for psi, _ in irreducible_factors(E):
        if psi.degree() == 1:
            c = -psi.coeff(0) / psi.lc()
            if c in values:
                rational_values.append((c, values[c]))
            elif psi.with_var("t") in class_polys:
                rational_values.append((c, 0))
            elif unsettled:
                unconfirmed.append(psi)
        else:
            if psi.with_var("t") in class_polys:
                irr.append((psi, psi.degree()))
            elif unsettled:
                unconfirmed.append(psi)
    for c, mu in rational_values:
        assert not E(c), "confirmed value is not a root of the eliminant"
    rational_points_mu = sum(p.mu for p in points)
    return AffineCriticalData(
        E, tuple(sorted(rational_values)), tuple(sorted(irr, key=lambda e: e[0].coeffs)), mu_total,
        tuple(sorted(points, key=lambda p: (p.x, p.y))), tuple(classes), mu_total - rational_points_mu,
        tuple(unconfirmed),
    )


def _class_over(g, P, Q, x0, psi, K, classes, budget):
    """Record the class of points (x0, root of psi); False when the budget is exceeded."""
    try:
        L = ExtensionField(K, psi.with_var("yb"), "yb", budget=budget)
    except NeedsExtension:
        return False
    b = L.gen()
    a = L(x0)
    v = g.change_field(L)(a, b)
    classes.append(CriticalClass(minimal_polynomial(v, "t"), L.degree))
    return True


def _eliminant(g, P, R):
    """Squarefree part of Res_x(R(x), Res_y(P, g - t)); its roots contain every critical value.

    The two resultants have degree in t up to deg R * deg_y P, which is slow in
    our dense QQ(t) arithmetic, so this step runs on sympy's integer polynomials.
    """
    import sympy

    x, y, t = sympy.symbols("x y t")

    def expr(F):
        return sympy.Poly.from_dict(
            {(i, j): sympy.Rational(c.numerator, c.denominator) for (i, j), c in F.terms.items()}, x, y, domain="QQ"
        ).as_expr()

    Rx = sum(sympy.Rational(c.numerator, c.denominator) * x ** i for i, c in enumerate(R.coeffs))
    S = sympy.resultant(expr(P), expr(g) - t, y)
    E = sympy.Poly(sympy.resultant(Rx, S, x), t, domain="QQ")
    coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(E.sqf_part().all_coeffs())]
    return UniPoly(QQ, coeffs, "t").monic()


def _class_degree(c):
    for attr in ("minpoly", "poly"):
        q = getattr(c, attr, None)
        if q is not None:
            return q.degree()
    return 1


def global_invariants(f, rows, affine=None, residual_points=(), strict=False):
    """mu, lambda and rank H1 = mu + lambda.

    ``rows`` holds (p, c, nu) with c a Fraction, Infinity (skipped) or a class
    of conjugate values given per conjugate (counted once for each).
    """
    from .chart import Infinity

    affine = affine or affine_critical_values(f)
    lam = 0
    for _, c, nu in rows:
        if c is Infinity or nu is None:
            continue
        lam += nu * _class_degree(c)
    notes = []
    lower = False
    # a simple point at infinity carries smooth level germs only, so nu = 0 there
    if any(getattr(rp, "multiplicity", 2) > 1 for rp in residual_points):
        lower = True
        notes.append("multiple points at infinity with non-rational coordinates were not analyzed")
    if affine.unconfirmed:
        notes.append("some eliminant factors could not be confirmed within the extension budget")
    if lower and strict:
        raise IncompleteAnalysis(notes[0])
    mu = affine.mu_total
    rank = INFINITE if mu == INFINITE else mu + lam
    return GlobalInvariants(mu, lam, rank, lower, tuple(notes))


__all__ = [
    "AffineCriticalData", "CriticalClass", "CriticalPoint", "GlobalInvariants", "IncompleteAnalysis",
    "NonIsolatedCriticalLocus", "affine_critical_values", "global_invariants", "total_milnor_number",
]
