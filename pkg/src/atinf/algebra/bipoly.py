"""Sparse bivariate polynomials over any coefficient field of this package."""
from __future__ import annotations

from .fields import QQ
from .unipoly import PolyRing, UniPoly, content_gcd, resultant as _uni_resultant, subresultant_prs, uni_gcd


class BiPoly:
    """An immutable polynomial sum c_ij * X^i * Y^j, stored as {(i, j): c}.

    ``vars`` names the two variables in order.  Zero coefficients are never
    stored, so ``terms == {}`` is the zero polynomial.
    """

    __slots__ = ("field", "terms", "vars", "_hash")

    def __init__(self, field, terms=None, vars=("x", "y"), *, clean=True):
        if terms is None:
            terms = {}
        elif clean:
            terms = {e: c for e, c in terms.items() if c}
        self.field = field
        self.terms = terms
        self.vars = tuple(vars)
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, field, c, vars=("x", "y")):
        return cls(field, {(0, 0): field(c)}, vars)

    @classmethod
    def gens(cls, field, vars=("x", "y")):
        one = field.one
        return cls(field, {(1, 0): one}, vars), cls(field, {(0, 1): one}, vars)

    @classmethod
    def from_dict(cls, field, data, vars=("x", "y")):
        return cls(field, {tuple(e): field(c) for e, c in data.items()}, vars)

    def _new(self, terms, clean=True):
        return BiPoly(self.field, terms, self.vars, clean=clean)

    # queries ------------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, i, j):
        return self.terms.get((i, j), self.field.zero)

    def constant_term(self):
        return self.terms.get((0, 0), self.field.zero)

    def total_degree(self):
        return max((i + j for i, j in self.terms), default=-1)

    def degree_in(self, k):
        return max((e[k] for e in self.terms), default=-1)

    def order(self):
        """Multiplicity at the origin (lowest total degree); None for zero."""
        return min((i + j for i, j in self.terms), default=None)

    def order_in(self, k):
        return min((e[k] for e in self.terms), default=None)

    def is_constant(self):
        return all(e == (0, 0) for e in self.terms)

    def homogeneous_part(self, k):
        return self._new({e: c for e, c in self.terms.items() if e[0] + e[1] == k}, clean=False)

    def leading_form(self):
        return self.homogeneous_part(self.total_degree())

    def initial_form(self):
        o = self.order()
        return self if o is None else self.homogeneous_part(o)

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, BiPoly):
            if other.field != self.field:
                from .fields import FieldMismatch
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other
        return BiPoly(self.field, {(0, 0): self.field(other)}, self.vars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = out[e] + c
                if s:
                    out[e] = s
                else:
                    del out[e]
            else:
                out[e] = c
        return self._new(out, clean=False)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()}, clean=False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            c = self.field(other)
            if not c:
                return self._new({}, clean=False)
            return self._new({e: a * c for e, a in self.terms.items()}, clean=False)
        other = self._coerce(other)
        out = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                e = (i1 + i2, j1 + j2)
                out[e] = out[e] + a * b if e in out else a * b
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative exponent")
        result = BiPoly.const(self.field, 1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_monomial(self, i, j, c=None):
        if c is None:
            return self._new({(a + i, b + j): v for (a, b), v in self.terms.items()}, clean=False)
        c = self.field(c)
        return self._new({(a + i, b + j): v * c for (a, b), v in self.terms.items()})

    def div_monomial(self, i, j):
        """Exact division by X^i Y^j."""
        out = {}
        for (a, b), v in self.terms.items():
            if a < i or b < j:
                raise ArithmeticError("monomial does not divide polynomial")
            out[(a - i, b - j)] = v
        return self._new(out, clean=False)

    def strip_monomial(self, k=None):
        """Remove the largest power of X (k=0), Y (k=1) or both (k=None) dividing self."""
        if not self.terms:
            return self, (0, 0)
        i = min(e[0] for e in self.terms) if k in (None, 0) else 0
        j = min(e[1] for e in self.terms) if k in (None, 1) else 0
        if i == 0 and j == 0:
            return self, (0, 0)
        return self.div_monomial(i, j), (i, j)

    # calculus and substitution -----------------------------------------
    def diff(self, k):
        """Partial derivative with respect to variable index k (or name)."""
        if isinstance(k, str):
            k = self.vars.index(k)
        out = {}
        for (i, j), c in self.terms.items():
            e = (i, j)[k]
            if e:
                out[(i - 1, j) if k == 0 else (i, j - 1)] = c * e
        return self._new(out)

    def evaluate(self, a, b):
        total = None
        for (i, j), c in self.terms.items():
            term = c * (a ** i) * (b ** j)
            total = term if total is None else total + term
        return self.field.zero if total is None else total

    __call__ = evaluate

    def compose(self, X, Y):
        """Substitute X, Y (BiPolys, possibly over a larger field) for the variables."""
        field = X.field
        powx = _powers(X)
        powy = _powers(Y)
        out = BiPoly(field, {}, X.vars)
        by_j = {}
        for (i, j), c in self.terms.items():
            by_j.setdefault(j, []).append((i, c))
        for j, items in by_j.items():
            inner = BiPoly(field, {}, X.vars)
            for i, c in items:
                inner = inner + powx(i) * field(c)
            out = out + inner * powy(j)
        return out

    def substitute(self, k, expr):
        """Replace variable index k by ``expr`` (a BiPoly in the same variables)."""
        if isinstance(k, str):
            k = self.vars.index(k)
        x, y = BiPoly.gens(expr.field, self.vars)
        return self.compose(expr, y) if k == 0 else self.compose(x, expr)

    def translate(self, a, b):
        """F(X + a, Y + b)."""
        x, y = BiPoly.gens(self.field, self.vars)
        return self.compose(x + a, y + b)

    def swap(self):
        return BiPoly(self.field, {(j, i): c for (i, j), c in self.terms.items()}, self.vars, clean=False)

    def map_coeffs(self, func, field=None, vars=None):
        return BiPoly(field or self.field, {e: func(c) for e, c in self.terms.items()}, vars or self.vars)

    def change_field(self, field):
        return self.map_coeffs(field, field)

    def rename(self, vars):
        return BiPoly(self.field, self.terms, vars, clean=False)

    def restrict(self, k, value=None):
        """Univariate polynomial obtained by setting variable k to ``value`` (default 0)."""
        other = 1 - k
        name = self.vars[other]
        if value is None:
            cs = {}
            for e, c in self.terms.items():
                if e[k] == 0:
                    cs[e[other]] = c
        else:
            cs = {}
            for e, c in self.terms.items():
                v = c * value ** e[k]
                cs[e[other]] = cs[e[other]] + v if e[other] in cs else v
        n = max(cs, default=-1) + 1
        return UniPoly(self.field, [cs.get(i, self.field.zero) for i in range(n)], name)

    # nested views -------------------------------------------------------
    def to_nested(self, k):
        """View as a UniPoly in variable k whose coefficients are UniPolys in the other variable."""
        other = 1 - k
        ring = PolyRing(self.field, self.vars[other])
        groups = {}
        for e, c in self.terms.items():
            groups.setdefault(e[k], {})[e[other]] = c
        n = max(groups, default=-1) + 1
        coeffs = []
        for i in range(n):
            g = groups.get(i, {})
            m = max(g, default=-1) + 1
            coeffs.append(UniPoly(self.field, [g.get(j, self.field.zero) for j in range(m)], ring.var))
        return UniPoly(ring, coeffs, self.vars[k])

    @classmethod
    def from_nested(cls, P, k, vars):
        field = P.field.field
        out = {}
        for i, q in enumerate(P.coeffs):
            for j, c in enumerate(q.coeffs):
                if c:
                    out[(i, j) if k == 0 else (j, i)] = c
        return cls(field, out, vars, clean=False)

    @classmethod
    def from_uni(cls, p, k, vars):
        """Embed a UniPoly as a BiPoly in variable index k."""
        out = {}
        for i, c in enumerate(p.coeffs):
            if c:
                out[(i, 0) if k == 0 else (0, i)] = c
        return cls(p.field, out, vars, clean=False)

    # comparison and display --------------------------------------------
    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self.terms == other.terms
        try:
            return self == self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sorted_terms(self):
        """Terms in graded lexicographic order, highest first, X before Y."""
        return sorted(self.terms.items(), key=lambda t: (-(t[0][0] + t[0][1]), -t[0][0]))

    def __repr__(self):
        return f"BiPoly({self.format()})"

    def format(self):
        from ..parse import format_poly
        return format_poly(self)

    __str__ = format


def _powers(P):
    cache = {0: BiPoly.const(P.field, 1, P.vars), 1: P}

    def power(n):
        if n not in cache:
            half = power(n // 2)
            cache[n] = half * half if n % 2 == 0 else half * half * P
        return cache[n]

    return power


# ---------------------------------------------------------------------------
# resultants and gcds


def resultant(F, G, var):
    """Res_var(F, G) as a BiPoly free of ``var``."""
    k = F.vars.index(var) if isinstance(var, str) else var
    A = F.to_nested(k)
    B = G.to_nested(k)
    if A.is_zero() or B.is_zero():
        return BiPoly(F.field, {}, F.vars)
    r = _uni_resultant(A, B)
    if not isinstance(r, UniPoly):
        r = A.field(r)
    return BiPoly.from_uni(r, 1 - k, F.vars)


def _content(P):
    return content_gcd(P.coeffs)


def _primitive(P):
    c = _content(P)
    if c is None or c.degree() == 0:
        return P
    return P.exquo(c)


def bipoly_gcd(F, G):
    """Greatest common divisor in K[X, Y], normalised to a monic leading coefficient."""
    if F.is_zero() and G.is_zero():
        return F
    if F.is_zero():
        return _normalise(G)
    if G.is_zero():
        return _normalise(F)
    # choose the variable in which both have positive degree, if any
    k = 1
    if F.degree_in(1) <= 0 and G.degree_in(1) <= 0:
        k = 0
    A = F.to_nested(k)
    B = G.to_nested(k)
    cA, cB = _content(A), _content(B)
    c = uni_gcd(cA, cB)
    pA, pB = A.exquo(cA), B.exquo(cB)
    if pA.degree() <= 0 or pB.degree() <= 0:
        g = A._new((c,))
    else:
        last = subresultant_prs(pA, pB)[-1]
        if last.degree() <= 0:
            g = A._new((c,))
        else:
            g = _primitive(last) * c
    return _normalise(BiPoly.from_nested(g, k, F.vars))


def _normalise(P):
    if P.is_zero():
        return P
    lc = P.sorted_terms()[0][1]
    return P * (P.field.one / lc)


def bipoly_divide(F, G):
    """Exact division F / G in K[X, Y]; raises ArithmeticError if inexact."""
    if G.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    k = 1 if G.degree_in(1) > 0 else 0
    A = F.to_nested(k)
    B = G.to_nested(k)
    q, r = _nested_divmod(A, B)
    if not r.is_zero():
        raise ArithmeticError("inexact bivariate division")
    return BiPoly.from_nested(q, k, F.vars)


def _nested_divmod(A, B):
    rem = list(A.coeffs)
    db = B.degree()
    lcb = B.lc()
    quot = [A.field.zero] * max(len(rem) - db, 0)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if not c:
            continue
        q, r = c.divmod(lcb)
        if r:
            raise ArithmeticError("inexact bivariate division")
        quot[k - db] = q
        for j, bj in enumerate(B.coeffs):
            rem[k - db + j] = rem[k - db + j] - q * bj
    return A._new(quot), A._new(rem)


def squarefree_factors(F, k=1):
    """Squarefree decomposition of F with respect to variable k.

    Returns [(P_i, i)] with P = content * prod P_i**i; the content (factors
    free of variable k) is dropped.
    """
    if F.degree_in(k) <= 0:
        return []
    A = _primitive(F.to_nested(k))
    P = BiPoly.from_nested(A, k, F.vars)
    out = []
    dP = P.diff(k)
    a0 = bipoly_gcd(P, dP)
    b = bipoly_divide(P, a0)
    c = bipoly_divide(dP, a0)
    d = c - b.diff(k)
    i = 1
    while b.degree_in(k) > 0:
        a = bipoly_gcd(b, d)
        if a.degree_in(k) > 0:
            out.append((a, i))
        b = bipoly_divide(b, a)
        c = bipoly_divide(d, a)
        d = c - b.diff(k)
        i += 1
    return out


__all__ = ["BiPoly", "resultant", "bipoly_gcd", "bipoly_divide", "squarefree_factors", "QQ"]
