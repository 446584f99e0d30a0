"""Points at infinity, standard position, and local germs of the level curves there."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra.bipoly import BiPoly
from .algebra.factor import irreducible_factors
from .algebra.fields import QQ, FunctionField
from .algebra.unipoly import UniPoly


class ConstantPolynomial(ValueError):
    pass


class NotAPointOfF(ValueError):
    pass


@dataclass(frozen=True, order=True)
class PointAtInfinity:
    """[a, b, 0] in canonical form ([1, b] or [0, 1]) with multiplicity d_p in f_d."""

    a: Fraction
    b: Fraction
    d_p: int = field(default=1, compare=False)

    def __post_init__(self):
        a, b = Fraction(self.a), Fraction(self.b)
        if a == 0 and b == 0:
            raise ValueError("[0, 0, 0] is not a projective point")
        if a != 0:
            a, b = Fraction(1), b / a
        else:
            b = Fraction(1)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def coords(self):
        return (self.a, self.b)

    def label(self):
        return f"[{self.a},{self.b},0]"

    def same_point(self, other):
        return self.coords == other.coords


@dataclass(frozen=True)
class ResidualFactor:
    """Irreducible factor of f_d(1, z) (z = y/x) without rational roots: a conjugate class of points."""

    poly: UniPoly
    multiplicity: int

    @property
    def degree(self):
        return self.poly.degree()


# value specifications for the parameter t


@dataclass(frozen=True)
class Value:
    c: object  # rational, or an element of a number field

    def __str__(self):
        return str(self.c)


@dataclass(frozen=True)
class _Symbolic:
    def __str__(self):
        return "t"


@dataclass(frozen=True)
class _Infinity:
    def __str__(self):
        return "inf"


Symbolic = _Symbolic()
Infinity = _Infinity()
TSpec = Value | _Symbolic | _Infinity


@dataclass(frozen=True)
class LinearChange:
    """(x, y) = M (x', y') with M = ((m00, m01), (m10, m11)) over QQ."""

    matrix: tuple

    def apply(self, f):
        (a, b), (c, d) = self.matrix
        X, Y = BiPoly.gens(f.field, f.vars)
        return f.compose(X * a + Y * b, X * c + Y * d)

    def is_identity(self):
        return self.matrix == ((1, 0), (0, 1))


IDENTITY = LinearChange(((1, 0), (0, 1)))


@dataclass(frozen=True)
class Germ:
    """Local equation g(u, v) of the closure of f = t at a point at infinity.

    For t = Infinity, ``g`` is h(u, v) = v^d f(1/v, u/v) (the t-term scaled away),
    and ``pair`` holds the limits of (g_u, s*g_v) as s = 1/t -> 0.
    """

    g: BiPoly
    point: PointAtInfinity
    tspec: object
    change: LinearChange
    degree: int
    pair: tuple = None

    def partials(self):
        if self.pair is not None:
            return self.pair
        return self.g.diff(0), self.g.diff(1)


def _dehomogenised_top(f):
    top = f.leading_form()
    d = f.total_degree()
    # f_d(1, z) = sum c_ij z^j
    coeffs = [QQ.zero] * (d + 1)
    for (i, j), c in top.terms.items():
        coeffs[j] = c
    return UniPoly(QQ, coeffs, "z"), d


def points_at_infinity(f):
    """Rational points at infinity with multiplicities, plus residual conjugate classes."""
    if f.total_degree() <= 0:
        raise ConstantPolynomial("f is constant")
    h, d = _dehomogenised_top(f)
    points = []
    residuals = []
    for factor, mult in irreducible_factors(h):
        if factor.degree() == 1:
            points.append(PointAtInfinity(Fraction(1), -factor.coeff(0) / factor.lc(), mult))
        else:
            residuals.append(ResidualFactor(factor, mult))
    if h.degree() < d:
        points.append(PointAtInfinity(Fraction(0), Fraction(1), d - h.degree()))
    points.sort()
    residuals.sort(key=lambda r: (r.degree, r.poly.coeffs))
    return points, residuals


def point_multiplicity(f, p):
    """Multiplicity of (b x - a y) in f_d."""
    h, d = _dehomogenised_top(f)
    if p.a == 0:
        return d - h.degree()
    z = UniPoly.gen(QQ, "z")
    m = 0
    while not h.is_zero() and h(p.b) == 0:
        h = h // (z - p.b)
        m += 1
    return m


def find_point(f, a, b):
    """The PointAtInfinity of f in direction [a, b], with its multiplicity."""
    p = PointAtInfinity(Fraction(a), Fraction(b))
    m = point_multiplicity(f, p)
    if m == 0:
        raise NotAPointOfF(f"{p.label()} is not a point at infinity of the level curves")
    return PointAtInfinity(p.a, p.b, m)


def move_to_standard(f, p):
    """Linear change of coordinates sending p to [1, 0, 0]."""
    if p.a == 0:
        change = LinearChange(((0, 1), (1, 0)))
    elif p.b == 0:
        return f, IDENTITY
    else:
        change = LinearChange(((1, 0), (p.b, 1)))
    return change.apply(f), change


def _homogenised_uv(f, field):
    """h(u, v) = v^d f(1/v, u/v): the term c x^i y^j becomes c u^j v^(d-i-j)."""
    d = f.total_degree()
    terms = {(j, d - i - j): field(c) for (i, j), c in f.terms.items()}
    return BiPoly(field, terms, ("u", "v")), d


def local_germ(f, p, t=Symbolic, *, tfield=None):
    """g_{p,t}(u, v) = v^d f'(1/v, u/v) - tau v^d after moving p to [1, 0, 0]."""
    if point_multiplicity(f, p) == 0:
        raise NotAPointOfF(f"{p.label()} is not a point at infinity of the level curves")
    moved, change = move_to_standard(f, p)
    if isinstance(t, Value):
        c = t.c
        field_ = getattr(c, "field", QQ) if not isinstance(c, (int, Fraction)) else QQ
        h, d = _homogenised_uv(moved, field_)
        g = h - BiPoly(field_, {(0, d): field_(c)}, ("u", "v"))
        pair = None
    elif t is Symbolic:
        T = tfield or FunctionField("t")
        h, d = _homogenised_uv(moved, T)
        g = h - BiPoly(T, {(0, d): T.gen()}, ("u", "v"))
        pair = None
    elif t is Infinity:
        g, d = _homogenised_uv(moved, QQ)
        pair = (g.diff(0), BiPoly(QQ, {(0, d - 1): Fraction(-d)}, ("u", "v")))
    else:
        raise TypeError(f"unknown t specification {t!r}")
    germ = Germ(g, p, t, change, d, pair)
    _check_germ(germ)
    return germ


def _check_germ(germ):
    g = germ.g
    if t_is_value_or_symbolic(germ.tspec):
        assert g.order_in(1) == 0, "germ must not contain the line at infinity"
        assert g.order() <= germ.point.d_p or germ.point.d_p == 0, "germ multiplicity exceeds d_p"


def t_is_value_or_symbolic(t):
    return t is Symbolic or isinstance(t, Value)


__all__ = [
    "ConstantPolynomial", "Germ", "IDENTITY", "Infinity", "LinearChange", "NotAPointOfF", "PointAtInfinity",
    "ResidualFactor", "Symbolic", "TSpec", "Value", "find_point", "local_germ", "move_to_standard",
    "point_multiplicity", "points_at_infinity",
]
