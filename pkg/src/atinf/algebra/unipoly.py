"""Dense univariate polynomials over an abstract coefficient domain.

Coefficients are stored low degree first.  The domain object supplies
``zero``, ``one`` and a coercion ``__call__``; the coefficients themselves
only need the usual arithmetic operators, so the same class serves
``QQ[t]``, ``QQ(t)[u]``, ``QQ(a)[z]`` and nested rings like ``K[w][v]``.
"""
from __future__ import annotations

from fractions import Fraction

ZERO_DEGREE = -1  # degree of the zero polynomial


class PolyRing:
    """The ring K[var]; used as a coefficient domain for nested polynomials."""

    __slots__ = ("field", "var", "zero", "one")

    def __init__(self, field, var):
        self.field = field
        self.var = var
        self.zero = UniPoly(field, (), var)
        self.one = UniPoly(field, (field.one,), var)

    def __call__(self, x):
        if isinstance(x, UniPoly):
            if x.var != self.var:
                raise TypeError(f"variable mismatch: {x.var} vs {self.var}")
            return x
        return UniPoly(self.field, (self.field(x),), self.var)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.field == other.field and self.var == other.var

    def __hash__(self):
        return hash((self.field, self.var))

    def __repr__(self):
        return f"{self.field!r}[{self.var}]"


def _exq(a, b):
    """Exact quotient in the coefficient domain."""
    if isinstance(a, UniPoly):
        return a.exquo(b)
    return a / b


class UniPoly:
    __slots__ = ("field", "coeffs", "var", "_hash")

    def __init__(self, field, coeffs, var="t", *, coerce=False):
        if coerce:
            coeffs = [field(c) for c in coeffs]
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)
        self.var = var
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def from_list(cls, field, coeffs, var="t"):
        return cls(field, coeffs, var, coerce=True)

    @classmethod
    def monomial(cls, field, n, c=None, var="t"):
        c = field.one if c is None else field(c)
        return cls(field, [field.zero] * n + [c], var)

    @classmethod
    def gen(cls, field, var="t"):
        return cls(field, (field.zero, field.one), var)

    def _new(self, coeffs):
        return UniPoly(self.field, coeffs, self.var)

    # basic queries ------------------------------------------------------
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def is_constant(self):
        return len(self.coeffs) <= 1

    def order(self):
        """Lowest exponent with a nonzero coefficient (None for zero)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    # arithmetic ---------------------------------------------------------
    def _is_poly(self, other):
        # a UniPoly over our own coefficient domain is a polynomial operand;
        # anything else (including UniPoly coefficients of a nested ring) is a scalar
        return isinstance(other, UniPoly) and other.field == self.field

    def _coerce(self, other):
        if self._is_poly(other):
            if other.var != self.var and other.degree() > 0 and self.degree() > 0:
                raise TypeError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        return UniPoly(self.field, (self.field(other),), self.var)

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not self._is_poly(other):
            c = self.field(other)
            if not c:
                return self._new(())
            return self._new([x * c for x in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return self._new(())
        out = [self.field.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return self._new(out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative exponent")
        result = self._new((self.field.one,))
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k):
        """Multiply by var**k."""
        if not self.coeffs:
            return self
        return self._new([self.field.zero] * k + list(self.coeffs))

    def scale(self, c):
        return self * c

    def divmod(self, other):
        """Division with remainder; requires an invertible leading coefficient."""
        other = self._coerce(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree()
        lcb = other.lc()
        inv = None
        if not isinstance(lcb, UniPoly):
            inv = self.field.one / lcb
        quot = [self.field.zero] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if not c:
                continue
            q = c * inv if inv is not None else _exq(c, lcb)
            quot[k - db] = q
            for j, bj in enumerate(other.coeffs):
                rem[k - db + j] = rem[k - db + j] - q * bj
        return self._new(quot), self._new(rem[:db] if db > 0 else [])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exquo(self, other):
        """Exact quotient; raises ArithmeticError when the division is not exact."""
        if not self._is_poly(other):
            c = self.field(other)
            if not c:
                raise ZeroDivisionError("division by zero")
            return self._new([_exq(x, c) for x in self.coeffs])
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def __truediv__(self, other):
        return self.exquo(other)

    def pseudo_remainder(self, other):
        """lc(B)**(degA - degB + 1) * A mod B, computed without division."""
        other = self._coerce(other)
        db = other.degree()
        if db < 0:
            raise ZeroDivisionError("pseudo-division by zero")
        rem = list(self.coeffs)
        lcb = other.lc()
        if len(rem) <= db:
            return self
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            rem = [x * lcb for x in rem]
            if c:
                for j, bj in enumerate(other.coeffs):
                    rem[k - db + j] = rem[k - db + j] - c * bj
            rem.pop()
        return self._new(rem)

    # calculus and evaluation -------------------------------------------
    def derivative(self):
        return self._new([c * i for i, c in enumerate(self.coeffs) if i > 0])

    def __call__(self, x):
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return self.field.zero
        return acc

    evaluate = __call__

    def compose(self, other):
        """self(other(var))."""
        acc = self._new(())
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def map_coeffs(self, func, field=None, var=None):
        return UniPoly(field or self.field, [func(c) for c in self.coeffs], var or self.var)

    def monic(self):
        if not self.coeffs:
            return self
        lc = self.lc()
        if lc == self.field.one:
            return self
        inv = self.field.one / lc
        return self._new([c * inv for c in self.coeffs])

    def with_var(self, var):
        return UniPoly(self.field, self.coeffs, var)

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        if self._is_poly(other):
            return self.coeffs == other.coeffs
        if len(self.coeffs) > 1:
            return False
        try:
            return self.coeff(0) == self.field(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.coeffs, self.var))
        return self._hash

    def __repr__(self):
        return f"UniPoly({self.format()})"

    def format(self, var=None):
        var = var or self.var
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            parts.append(_term_text(c, i, var))
        text = parts[0]
        for p in parts[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return text

    __str__ = format


def _coeff_text(c):
    if isinstance(c, Fraction):
        return str(c)
    s = str(c)
    if any(op in s.lstrip("-") for op in "+- "):
        return f"({s})"
    return s


def _term_text(c, i, var):
    mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
    if not mono:
        return _coeff_text(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{_coeff_text(c)}*{mono}"


# ---------------------------------------------------------------------------
# subresultant machinery


def subresultant_prs(A, B):
    """Subresultant polynomial remainder sequence of A and B (deg A >= deg B).

    Works over any integral domain whose elements support exact division.
    """
    if A.degree() < B.degree():
        A, B = B, A
    if B.is_zero():
        return [A]
    seq = [A, B]
    one = A.field.one
    g = h = one
    while B.degree() > 0:
        delta = A.degree() - B.degree()
        R = A.pseudo_remainder(B)
        if R.is_zero():
            break
        A, B = B, R.exquo(g * h ** delta)
        seq.append(B)
        g = A.lc()
        if delta == 1:
            h = g
        elif delta > 1:
            h = _exq(g ** delta, h ** (delta - 1))
    return seq


def resultant(A, B):
    """Resultant of two polynomials over an integral domain (Sylvester determinant)."""
    field = A.field
    if A.is_zero() or B.is_zero():
        return field.zero
    sign = 1
    if A.degree() < B.degree():
        A, B = B, A
        if A.degree() % 2 and B.degree() % 2:
            sign = -1
    if B.degree() == 0:
        r = B.lc() ** A.degree()
        return r if sign == 1 else -r
    g = h = field.one
    while True:
        delta = A.degree() - B.degree()
        if A.degree() % 2 and B.degree() % 2:
            sign = -sign
        R = A.pseudo_remainder(B)
        A = B
        if R.is_zero():
            return field.zero
        B = R.exquo(g * h ** delta)
        g = A.lc()
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = _exq(g ** delta, h ** (delta - 1))
        if B.degree() <= 0:
            break
    da = A.degree()
    if da == 0:
        res = h
    elif da == 1:
        res = B.lc()
    else:
        res = _exq(B.lc() ** da, h ** (da - 1))
    return res if sign == 1 else -res


def uni_gcd(A, B):
    """Monic gcd over a field; gcd(A, 0) = monic(A)."""
    if A.is_zero():
        return B.monic()
    if B.is_zero():
        return A.monic()
    if A.degree() == 0 or B.degree() == 0:
        return A._new((A.field.one,))
    seq = subresultant_prs(A, B)
    last = seq[-1]
    if last.degree() == 0:
        return A._new((A.field.one,))
    return last.monic()


def uni_xgcd(A, B):
    """Return (g, s, t) with s*A + t*B = g monic, over a field."""
    field = A.field
    r0, r1 = A, B
    s0, s1 = A._new((field.one,)), A._new(())
    t0, t1 = A._new(()), A._new((field.one,))
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = field.one / r0.lc()
    return r0 * inv, s0 * inv, t0 * inv


def content_gcd(values, gcd=uni_gcd):
    out = None
    for v in values:
        if not v:
            continue
        out = v.monic() if out is None else gcd(out, v)
        if out.degree() == 0:
            break
    return out


def squarefree_decomposition(A):
    """Yun's algorithm over a field of characteristic zero.

    Returns (lc, [(P1, 1), (P2, 2), ...]) with monic squarefree, pairwise
    coprime P_i and A = lc * prod P_i**i.  Factors equal to 1 are dropped.
    """
    if A.is_zero():
        raise ZeroDivisionError("squarefree decomposition of zero")
    lc = A.lc()
    A = A.monic()
    out = []
    if A.degree() == 0:
        return lc, out
    dA = A.derivative()
    a0 = uni_gcd(A, dA)
    b = A // a0
    c = dA // a0
    d = c - b.derivative()
    i = 1
    while b.degree() > 0:
        a = uni_gcd(b, d)
        if a.degree() > 0:
            out.append((a, i))
        b = b // a
        c = d // a
        d = c - b.derivative()
        i += 1
    return lc, out


def squarefree_part(A):
    if A.degree() <= 0:
        return A._new((A.field.one,)) if A else A
    return (A // uni_gcd(A, A.derivative())).monic()
