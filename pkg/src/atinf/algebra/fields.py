"""Coefficient fields: QQ, rational function fields K(t), and simple extensions K[a]/(m).

Elements of QQ are plain :class:`fractions.Fraction` values.  The other two
kinds get small immutable element classes with the arithmetic dunders, so
polynomial code can stay agnostic of the field it runs over.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _Rational

from .unipoly import UniPoly, uni_gcd, uni_xgcd


class FieldMismatch(TypeError):
    """Operands live in different coefficient fields."""


class NeedsExtension(ArithmeticError):
    """An algebraic extension would exceed the configured budget."""

    def __init__(self, message, *, modulus=None, degree=None, depth=None):
        super().__init__(message)
        self.modulus = modulus
        self.degree = degree
        self.depth = depth


@dataclass(frozen=True)
class Budget:
    """Limits on the extension tower built during an analysis."""

    max_degree: int = 16
    max_depth: int = 2


DEFAULT_BUDGET = Budget()


class RationalField:
    """The field of rational numbers; elements are ``Fraction``."""

    depth = 0
    degree = 1
    base = None
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (int, _Rational)) and not isinstance(x, bool):
            return Fraction(x)
        if isinstance(x, bool):
            return Fraction(int(x))
        if isinstance(x, str):
            return Fraction(x)
        raise FieldMismatch(f"cannot coerce {x!r} into QQ")

    def owns(self, x):
        return isinstance(x, (Fraction, int))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"

    def tower(self):
        return [self]


QQ = RationalField()


def _defers(self, other):
    """True when other is a polynomial over self's field: let its reflected op run."""
    return getattr(other, "field", None) == self.field and not isinstance(other, (RatFunc, ExtElem))


def _scalar_op(method):
    def wrapper(self, other):
        if _defers(self, other):
            return NotImplemented
        return method(self, other)

    wrapper.__name__ = method.__name__
    wrapper.__doc__ = method.__doc__
    return wrapper


def _check_same(a, b):
    if a.field is not b.field and a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")


# ---------------------------------------------------------------------------
# rational function field


class FunctionField:
    """K(var) for a base field K (QQ by default)."""

    def __init__(self, var="t", base=QQ):
        self.var = var
        self.base = base
        self.depth = base.depth
        self.degree = base.degree
        self.zero = RatFunc(self, UniPoly(base, (), var), UniPoly(base, (base.one,), var), _reduced=True)
        self.one = RatFunc(self, UniPoly(base, (base.one,), var), UniPoly(base, (base.one,), var), _reduced=True)
        self._hash = hash(("FF", var, base))

    def __call__(self, x):
        if isinstance(x, RatFunc):
            if x.field is self or x.field == self:
                return x
            raise FieldMismatch(f"{x.field!r} is not {self!r}")
        if isinstance(x, UniPoly):
            if x.var != self.var:
                raise FieldMismatch(f"variable {x.var} is not {self.var}")
            return RatFunc(self, x.map_coeffs(self.base), UniPoly(self.base, (self.base.one,), self.var), _reduced=True)
        c = self.base(x)
        return RatFunc(self, UniPoly(self.base, (c,), self.var), UniPoly(self.base, (self.base.one,), self.var), _reduced=True)

    def gen(self):
        return self(UniPoly.gen(self.base, self.var))

    def owns(self, x):
        return isinstance(x, RatFunc) and x.field == self

    def __eq__(self, other):
        return self is other or (isinstance(other, FunctionField) and self.var == other.var and self.base == other.base)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"{self.base!r}({self.var})"

    def tower(self):
        return self.base.tower() + [self]


class RatFunc:
    """A reduced fraction num/den of polynomials with monic denominator."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den, *, _reduced=False):
        if not _reduced:
            if den.is_zero():
                raise ZeroDivisionError("rational function with zero denominator")
            if num.is_zero():
                den = UniPoly(field.base, (field.base.one,), field.var)
            elif den.degree() > 0:
                g = uni_gcd(num, den)
                if g.degree() > 0:
                    num = num // g
                    den = den // g
            lc = den.lc()
            if lc != field.base.one:
                inv = field.base.one / lc
                num = num * inv
                den = den * inv
        self.field = field
        self.num = num
        self.den = den

    def _other(self, other):
        if isinstance(other, RatFunc):
            _check_same(self, other)
            return other
        return self.field(other)

    @_scalar_op
    def __add__(self, other):
        o = self._other(other)
        if self.den.degree() == 0 and o.den.degree() == 0:
            return RatFunc(self.field, self.num + o.num, self.den, _reduced=True)
        if self.den == o.den:
            return RatFunc(self.field, self.num + o.num, self.den)
        return RatFunc(self.field, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.field, -self.num, self.den, _reduced=True)

    @_scalar_op
    def __sub__(self, other):
        return self + (-self._other(other))

    @_scalar_op
    def __rsub__(self, other):
        return self._other(other) - self

    @_scalar_op
    def __mul__(self, other):
        o = self._other(other)
        if self.den.degree() == 0 and o.den.degree() == 0:
            return RatFunc(self.field, self.num * o.num, self.den, _reduced=True)
        return RatFunc(self.field, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    @_scalar_op
    def __truediv__(self, other):
        o = self._other(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero in rational function field")
        return RatFunc(self.field, self.num * o.den, self.den * o.num)

    @_scalar_op
    def __rtruediv__(self, other):
        return self._other(other) / self

    def __pow__(self, n):
        if n < 0:
            return (self.field.one / self) ** (-n)
        return RatFunc(self.field, self.num ** n, self.den ** n, _reduced=True)

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.field == other.field and self.num == other.num and self.den == other.den
        try:
            o = self.field(other)
        except (FieldMismatch, TypeError, ValueError):
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.den.degree() == 0 and self.num.degree() <= 0:
            return hash(self.num.coeff(0))
        return hash((self.num, self.den))

    def is_polynomial(self):
        return self.den.degree() == 0

    def specialize(self, value):
        """Evaluate at var = value (value in the base field or an extension of it)."""
        d = self.den(value)
        if not d:
            raise ZeroDivisionError("pole at specialization point")
        return self.num(value) / d

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.den.degree() == 0:
            return self.num.format()
        n = self.num.format()
        if self.num.degree() > 0 and len([c for c in self.num.coeffs if c]) > 1:
            n = f"({n})"
        d = self.den.format()
        if len([c for c in self.den.coeffs if c]) > 1 or "^" in d:
            d = f"({d})"
        return f"{n}/{d}"


# ---------------------------------------------------------------------------
# simple algebraic extensions


class ExtensionField:
    """K[gen]/(modulus) for a monic irreducible modulus of degree >= 2."""

    def __init__(self, base, modulus, name="a", *, budget=DEFAULT_BUDGET):
        if isinstance(base, FunctionField):
            raise FieldMismatch("extensions of function fields are not supported")
        modulus = modulus.map_coeffs(base).monic()
        n = modulus.degree()
        if n < 2:
            raise ValueError("extension modulus must have degree >= 2")
        depth = base.depth + 1
        degree = base.degree * n
        if depth > budget.max_depth or degree > budget.max_degree:
            raise NeedsExtension(
                f"extension of degree {degree} at depth {depth} exceeds budget "
                f"(degree<={budget.max_degree}, depth<={budget.max_depth})",
                modulus=modulus, degree=degree, depth=depth,
            )
        self.base = base
        self.modulus = modulus.with_var(name)
        self.name = name
        self.n = n
        self.depth = depth
        self.degree = degree
        self.zero = ExtElem(self, (base.zero,) * n)
        self.one = ExtElem(self, (base.one,) + (base.zero,) * (n - 1))
        self._hash = hash(("EXT", self.modulus.coeffs, base))

    def __call__(self, x):
        if isinstance(x, ExtElem) and (x.field is self or x.field == self):
            return x
        if isinstance(x, UniPoly):
            return self.from_poly(x)
        c = self.base(x)
        return ExtElem(self, (c,) + (self.base.zero,) * (self.n - 1))

    def gen(self):
        if self.n == 1:
            raise ValueError
        return ExtElem(self, (self.base.zero, self.base.one) + (self.base.zero,) * (self.n - 2))

    def from_poly(self, p):
        """Reduce a polynomial in the generator modulo the modulus."""
        p = p.map_coeffs(self.base, var=self.name)
        r = p % self.modulus if p.degree() >= self.n else p
        cs = list(r.coeffs) + [self.base.zero] * (self.n - len(r.coeffs))
        return ExtElem(self, tuple(cs))

    def owns(self, x):
        return isinstance(x, ExtElem) and x.field == self

    def __eq__(self, other):
        return self is other or (
            isinstance(other, ExtensionField)
            and self.base == other.base
            and self.modulus.coeffs == other.modulus.coeffs
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"{self.base!r}[{self.name}]/({self.modulus.format()})"

    def tower(self):
        return self.base.tower() + [self]


class ExtElem:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def _other(self, other):
        if isinstance(other, ExtElem) and (other.field is self.field or other.field == self.field):
            return other
        return self.field(other)

    @_scalar_op
    def __add__(self, other):
        o = self._other(other)
        return ExtElem(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return ExtElem(self.field, tuple(-a for a in self.coeffs))

    @_scalar_op
    def __sub__(self, other):
        o = self._other(other)
        return ExtElem(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    @_scalar_op
    def __rsub__(self, other):
        return self._other(other) - self

    @_scalar_op
    def __mul__(self, other):
        o = self._other(other)
        K = self.field
        base = K.base
        n = K.n
        prod = [base.zero] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    prod[i + j] = prod[i + j] + a * b
        mod = K.modulus.coeffs
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if c:
                for j in range(n):
                    prod[k - n + j] = prod[k - n + j] - c * mod[j]
        return ExtElem(K, tuple(prod[:n]))

    __rmul__ = __mul__

    def as_poly(self):
        return UniPoly(self.field.base, self.coeffs, self.field.name)

    def inverse(self):
        if not self:
            raise ZeroDivisionError("division by zero in extension field")
        g, s, _ = uni_xgcd(self.as_poly(), self.field.modulus)
        if g.degree() != 0:
            raise ArithmeticError("extension modulus is reducible")
        return self.field.from_poly(s)

    @_scalar_op
    def __truediv__(self, other):
        return self * self._other(other).inverse()

    @_scalar_op
    def __rtruediv__(self, other):
        return self._other(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, ExtElem):
            return self.field == other.field and self.coeffs == other.coeffs
        try:
            o = self.field(other)
        except (FieldMismatch, TypeError, ValueError):
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if not any(self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    def in_base(self):
        return not any(self.coeffs[1:])

    def __repr__(self):
        return f"ExtElem({self})"

    def __str__(self):
        return self.as_poly().format()


# ---------------------------------------------------------------------------
# helpers shared by the analysis layers


def embed(x, field):
    """Coerce x (from a subfield of ``field``) into ``field``."""
    return field(x)


def is_rational(x):
    """True when x is (the image of) a rational number."""
    if isinstance(x, (Fraction, int)):
        return True
    if isinstance(x, ExtElem):
        return x.in_base() and is_rational(x.coeffs[0])
    if isinstance(x, RatFunc):
        return x.num.degree() <= 0 and x.den.degree() == 0 and is_rational(x.num.coeff(0))
    return False


def to_rational(x):
    if isinstance(x, (Fraction, int)):
        return Fraction(x)
    if isinstance(x, ExtElem) and x.in_base():
        return to_rational(x.coeffs[0])
    if isinstance(x, RatFunc) and x.num.degree() <= 0 and x.den.degree() == 0:
        return to_rational(x.num.coeff(0))
    raise ValueError(f"{x} is not rational")


def common_field(a, b):
    """The larger of two fields in a single tower."""
    if a == b:
        return a
    if a in b.tower():
        return b
    if b in a.tower():
        return a
    raise FieldMismatch(f"{a!r} and {b!r} are not in one tower")
