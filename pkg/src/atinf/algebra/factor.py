"""Root finding and factorisation of univariate polynomials.

Over QQ, rational roots come from the rational root theorem applied to the
primitive integer form; the irreducible factorisation of what remains is
delegated to sympy.  Over a simple extension K[a]/(m) we use Trager's norm
method, recursing down the tower to QQ.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .bipoly import BiPoly, resultant as bi_resultant
from .fields import QQ, DEFAULT_BUDGET, ExtElem, ExtensionField, FunctionField, is_rational, to_rational
from .unipoly import UniPoly, squarefree_decomposition, uni_gcd


@dataclass(frozen=True)
class SquarefreeRoots:
    """Rational roots with multiplicities plus the root-free squarefree residual."""

    roots: tuple  # ((Fraction, multiplicity), ...)
    residual: UniPoly  # monic, squarefree, no rational roots
    constant: Fraction


def _integer_form(p):
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return [c // g for c in ints] if g else ints


# above this many candidate fractions the divisor scan is replaced by factoring
_MAX_CANDIDATES = 4096


def _divisors(n):
    import sympy

    return sympy.divisors(abs(n))


def _divisor_count(n):
    import sympy

    return sympy.divisor_count(abs(n)) if n else 0


def rational_roots(p):
    """Distinct rational roots of a nonzero polynomial over QQ, sorted."""
    if p.is_zero():
        raise ZeroDivisionError("zero polynomial has every root")
    if p.degree() <= 0:
        return []
    ints = _integer_form(p)
    roots = []
    k = 0
    while ints[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
    ints = ints[k:]
    if len(ints) == 1:
        return roots
    a0, an = ints[0], ints[-1]
    if _small(a0) and _small(an) and _divisor_count(a0) * _divisor_count(an) <= _MAX_CANDIDATES:
        roots.extend(_scan_divisors(ints))
    else:
        for coeffs in _sympy_factor_cached(tuple(Fraction(c) for c in ints)):
            if len(coeffs) == 2:
                roots.append(-coeffs[0] / coeffs[1])
    return sorted(roots)


def _small(n):
    return abs(n) < 10 ** 15


def _scan_divisors(ints):
    a0, an = ints[0], ints[-1]
    cands = set()
    for num in _divisors(a0):
        for den in _divisors(an):
            q = Fraction(num, den)
            cands.add(q)
            cands.add(-q)
    out = []
    for q in sorted(cands):
        # integer Horner on the homogenised form avoids Fraction churn
        n, d = q.numerator, q.denominator
        acc = 0
        dp = 1
        for c in reversed(ints):
            acc = acc * n + c * dp
            dp *= d
        if acc == 0:
            out.append(q)
    return out


def uni_squarefree_and_roots(p):
    """Split p over QQ into rational roots (with multiplicity) and a root-free residual."""
    if p.is_zero():
        raise ZeroDivisionError("zero polynomial")
    lc, parts = squarefree_decomposition(p)
    roots = []
    residual = UniPoly(QQ, (Fraction(1),), p.var)
    t = UniPoly.gen(QQ, p.var)
    for part, mult in parts:
        rs = rational_roots(part)
        rest = part
        for r in rs:
            roots.append((r, mult))
            rest = rest // (t - r)
        residual = residual * rest
    roots.sort()
    return SquarefreeRoots(tuple(roots), residual.monic(), lc)


# ---------------------------------------------------------------------------
# irreducible factorisation


def _factor_q_squarefree(p):
    """Monic irreducible factors over QQ of a squarefree polynomial."""
    if p.degree() <= 0:
        return []
    t = UniPoly.gen(QQ, p.var)
    out = []
    rest = p.monic()
    for r in rational_roots(rest):
        out.append(t - r)
        rest = rest // (t - r)
    if rest.degree() >= 2:
        if rest.degree() <= 3:
            out.append(rest.monic())
        else:
            out.extend(_sympy_factors(rest.coeffs, p.var))
    return out


@lru_cache(maxsize=4096)
def _sympy_factor_cached(coeffs):
    import sympy

    z = sympy.Symbol("z")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * z ** i for i, c in enumerate(coeffs))
    _, factors = sympy.factor_list(sympy.Poly(expr, z, domain="QQ"))
    out = []
    for f, _ in factors:
        cs = [Fraction(int(c.p), int(c.q)) for c in reversed(f.all_coeffs())]
        out.append(tuple(cs))
    return tuple(out)


def _sympy_factors(coeffs, var):
    return [UniPoly(QQ, cs, var).monic() for cs in _sympy_factor_cached(tuple(coeffs))]


def factor_squarefree(p, budget=DEFAULT_BUDGET):
    """Monic irreducible factors of a squarefree polynomial over its field."""
    field = p.field
    if p.degree() <= 0:
        return []
    if field == QQ:
        return _factor_q_squarefree(p)
    if isinstance(field, ExtensionField):
        return _trager(p, budget)
    raise NotImplementedError(f"factorisation over {field!r}")


def irreducible_factors(p, budget=DEFAULT_BUDGET):
    """[(monic irreducible factor, multiplicity)] over the coefficient field of p."""
    _, parts = squarefree_decomposition(p)
    out = []
    for part, mult in parts:
        for f in factor_squarefree(part, budget):
            out.append((f, mult))
    return out


def _lift_to_bivariate(p, k):
    """g(x - k*a) with the generator a made a second variable: BiPoly over the base field."""
    E = p.field
    base = E.base
    X, A = BiPoly.gens(base, (p.var, E.name))
    shifted = X - A * k
    out = BiPoly(base, {}, (p.var, E.name))
    power = BiPoly.const(base, 1, (p.var, E.name))
    for c in p.coeffs:
        coeff = BiPoly(base, {(0, j): cj for j, cj in enumerate(c.coeffs) if cj}, (p.var, E.name))
        out = out + coeff * power
        power = power * shifted
    return out


def _trager(p, budget):
    E = p.field
    base = E.base
    p = p.monic()
    modulus = BiPoly(base, {(0, j): c for j, c in enumerate(E.modulus.coeffs) if c}, (p.var, E.name))
    for k in [0, 1, -1, 2, -2, 3, -3, 4, 5, 6, 7]:
        G = _lift_to_bivariate(p, k)
        N = bi_resultant(G, modulus, 1).restrict(1)
        N = N.with_var(p.var)
        if N.degree() != p.degree() * E.n:
            continue
        if uni_gcd(N, N.derivative()).degree() > 0:
            continue
        break
    else:
        raise ArithmeticError("no squarefree norm found")
    factors_base = factor_squarefree(N.monic(), budget)
    if len(factors_base) == 1:
        return [p]
    a = E.gen()
    x = UniPoly.gen(E, p.var)
    shifted_p = p.compose(x - a * k)  # p(x - k a)
    out = []
    for nb in factors_base:
        h = uni_gcd(shifted_p, nb.map_coeffs(E, E))
        if h.degree() > 0:
            out.append(h.compose(x + a * k).monic())
    return out


def roots_in_field(p, budget=DEFAULT_BUDGET):
    """Roots of p lying in its own coefficient field, with multiplicities."""
    out = []
    for f, mult in irreducible_factors(p, budget):
        if f.degree() == 1:
            out.append((-f.coeff(0) / f.lc(), mult))
    return out


# ---------------------------------------------------------------------------
# minimal polynomials over QQ


def flatten(x):
    """Coordinates of x over QQ in the power basis of its tower."""
    if isinstance(x, ExtElem):
        out = []
        for c in x.coeffs:
            out.extend(flatten(c))
        return out
    if isinstance(x, FunctionField):
        raise TypeError
    return [Fraction(x)]


def _tower_basis(field):
    """Power-basis elements of field over QQ, in the order used by ``flatten``."""
    if field == QQ:
        return [field.one]
    if isinstance(field, ExtensionField):
        inner = _tower_basis(field.base)
        g = field.gen()
        out = []
        power = field.one
        for _ in range(field.n):
            for b in inner:
                out.append(power * field(b))
            power = power * g
        return out
    raise TypeError(f"no finite basis for {field!r}")


def _charpoly(M):
    """Characteristic polynomial of a square Fraction matrix (Faddeev-LeVerrier)."""
    n = len(M)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Mk = M * (M_{k-1} + c_{n-k+1} I)
        prev = [row[:] for row in Mk]
        for i in range(n):
            prev[i][i] += coeffs[n - k + 1]
        Mk = [[sum(M[i][l] * prev[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(Mk[i][i] for i in range(n)) / k
    return coeffs


def minimal_polynomial(x, var="t"):
    """Monic minimal polynomial over QQ of an element of a number-field tower."""
    if is_rational(x):
        r = to_rational(x)
        return UniPoly(QQ, (-r, Fraction(1)), var)
    field = x.field
    basis = _tower_basis(field)
    cols = [flatten(x * b) for b in basis]
    n = len(basis)
    M = [[cols[j][i] for j in range(n)] for i in range(n)]
    cp = UniPoly(QQ, _charpoly(M), var)
    return (cp // uni_gcd(cp, cp.derivative())).monic()


def norm_to_q(p):
    """Product of the conjugates of p (a polynomial over a number-field tower) as a QQ polynomial."""
    field = p.field
    while isinstance(field, ExtensionField):
        E = field
        modulus = BiPoly(E.base, {(0, j): c for j, c in enumerate(E.modulus.coeffs) if c}, (p.var, E.name))
        G = BiPoly(E.base, {}, (p.var, E.name))
        for i, c in enumerate(p.coeffs):
            for j, cj in enumerate(c.coeffs):
                if cj:
                    G = G + BiPoly(E.base, {(i, j): cj}, (p.var, E.name))
        p = bi_resultant(G, modulus, 1).restrict(1).with_var(p.var)
        field = E.base
    return p


__all__ = [
    "SquarefreeRoots", "factor_squarefree", "flatten", "irreducible_factors", "minimal_polynomial",
    "norm_to_q", "rational_roots", "roots_in_field", "uni_squarefree_and_roots", "FunctionField",
]
