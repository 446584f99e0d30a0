"""Polar-curve oracle: branches of f_y = 0 escaping to a point at infinity.

After moving p to [1, 0, 0], the polar curve f_y = 0 is written in the
local coordinates x = 1/v, y = u/v as Q(u, v) = v^e f_y(1/v, u/v).  Its
branches through (u, v) = (0, 0) are computed with the rational
Newton-Puiseux algorithm (Duval), each as a parametrisation

    v = gamma * T^Q,    u = U(T) = P(T) + lam * T^N * S(T)

where P is the exact singular part and S solves a regular equation.  The
value of f along a branch is h(U, V) / V^d with h = v^d f(1/v, u/v); its
limit and order in T give the number of intersection points of f = t with
the polar curve tending to p as t tends to the limit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import series
from .algebra.bipoly import BiPoly, bipoly_gcd, squarefree_factors
from .algebra.factor import irreducible_factors, minimal_polynomial
from .algebra.fields import QQ, ExtensionField, NeedsExtension, DEFAULT_BUDGET, is_rational, to_rational
from .algebra.unipoly import UniPoly
from .chart import Infinity, move_to_standard


class TruncationExhausted(ArithmeticError):
    pass


class DegeneratePolar(ArithmeticError):
    """f - c and f_y share a component, so the polar count is undefined."""


@dataclass(frozen=True)
class AlgebraicClass:
    """A non-rational algebraic number, up to conjugation."""

    minpoly: UniPoly

    def __str__(self):
        return f"root of {self.minpoly.format()}"


@dataclass
class PuiseuxBranch:
    field: object
    gamma: object
    Q: int  # ramification index
    exact: list  # P(T), coefficients low to high
    lam: object
    N: int
    regular: BiPoly | None  # equation for S in (T, Y); None for an exact branch
    multiplicity: int = 1
    point: object = None
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def ramification(self):
        return self.Q

    @property
    def conjugates(self):
        """Number of conjugate branches over QQ represented by this one."""
        return self.field.degree

    def u_series(self, n):
        """U(T) mod T^n."""
        if n in self._cache:
            return self._cache[n]
        zero = self.field.zero
        out = [zero] * n
        for i, c in enumerate(self.exact[:n]):
            out[i] = c
        if self.regular is not None and n > self.N:
            S = _solve_regular(self.regular, n - self.N, self.field)
            for i, c in enumerate(S):
                out[self.N + i] = out[self.N + i] + self.lam * c
        self._cache[n] = out
        return out

    def terms(self, n):
        """Nonzero terms (exponent of x, coefficient) of y = u/v in powers of x, when gamma = 1.

        With v = T^Q and x = 1/v, the term a_i T^i of u gives a_i x^(1 - i/Q).
        """
        out = []
        for i, c in enumerate(self.u_series(n)):
            if c:
                out.append((1 - Fraction(i, self.Q), c))
        return out


@dataclass(frozen=True)
class BranchLimit:
    value: object  # Fraction, AlgebraicClass or Infinity
    k: int
    exact_value: object = None  # the limit as an element of the branch field


# ---------------------------------------------------------------------------
# Newton-Puiseux


def _poly_terms_TY(Qpoly):
    """Q(u, v) to a BiPoly in (T, Y) with T = v, Y = u."""
    return BiPoly(Qpoly.field, {(j, i): c for (i, j), c in Qpoly.terms.items()}, ("T", "Y"))


def _edges(F):
    """Lower Newton polygon edges with Y -> 0 branches: (i0, j0, q, m, g)."""
    low = {}
    for (j, i), c in F.terms.items():
        if i not in low or j < low[i]:
            low[i] = j
    if 0 not in low:
        return []
    edges = []
    ic, jc = 0, low[0]
    while True:
        best = None
        for i, j in low.items():
            if i <= ic:
                continue
            slope = Fraction(j - jc, i - ic)
            if best is None or slope < best[0] or (slope == best[0] and i > best[1]):
                best = (slope, i, j)
        if best is None or best[0] >= 0:
            break
        _, ie, je = best
        di, dj = ie - ic, jc - je
        g = math.gcd(di, dj)
        edges.append((ic, jc, di // g, dj // g, g))
        ic, jc = ie, je
    return edges


def _bezout(q, m):
    """beta, alpha >= 0 with beta*q - alpha*m = 1."""
    if m == 1:
        return 1, q - 1
    beta = pow(q, -1, m)
    return beta, (beta * q - 1) // m


def _substitute(F, xi, alpha, beta, q, m, l, L):
    """F(xi^alpha T^q, T^m (xi^beta + Y)) / T^l over L."""
    xb = xi ** beta
    out = {}
    binom_cache = {}
    for (j, i), c in F.terms.items():
        base = L(c) * xi ** (alpha * j)
        tpow = q * j + m * i - l
        if i not in binom_cache:
            binom_cache[i] = [math.comb(i, k) * xb ** (i - k) for k in range(i + 1)]
        for k, bc in enumerate(binom_cache[i]):
            key = (tpow, k)
            val = base * bc
            out[key] = out[key] + val if key in out else val
    return BiPoly(L, out, ("T", "Y"))


@dataclass
class _State:
    field: object
    gamma: object
    Q: int
    exact: list
    lam: object
    N: int

    def lift(self, L):
        return _State(L, L(self.gamma), self.Q, [L(c) for c in self.exact], L(self.lam), self.N)

    def step(self, xi, alpha, beta, q, m):
        L = self.field
        xa = xi ** alpha
        gamma = self.gamma * xa ** self.Q
        exact = series.compose_monomial(self.exact, xa, q, max(len(self.exact) * q, 1), L.zero)
        lam = self.lam * xa ** self.N
        N = q * self.N + m
        if len(exact) <= N:
            exact = exact + [L.zero] * (N + 1 - len(exact))
        exact[N] = exact[N] + lam * xi ** beta
        return _State(L, gamma, self.Q * q, exact, lam, N)


class _Unresolved:
    def __init__(self, degree, multiplicity, reason):
        self.degree = degree
        self.multiplicity = multiplicity
        self.reason = reason


def _branches(F, state, budget, mult, out, unresolved, depth=0):
    L = state.field
    # exact branch Y = 0
    if all(i > 0 for (_, i) in F.terms):
        out.append(PuiseuxBranch(L, state.gamma, state.Q, list(state.exact), state.lam, state.N, None, mult))
        F = F.div_monomial(0, 1)
    for ic, jc, q, m, g in _edges(F):
        phi = UniPoly(L, [F.coeff(jc - k * m, ic + k * q) for k in range(g + 1)], "Z")
        for psi, r in irreducible_factors(phi, budget):
            if psi.degree() == 1:
                K = L
                xi = -psi.coeff(0) / psi.lc()
                st = state
            else:
                try:
                    K = ExtensionField(L, psi.with_var(f"w{L.depth + 1}"), f"w{L.depth + 1}", budget=budget)
                except NeedsExtension as exc:
                    unresolved.append(_Unresolved(L.degree * psi.degree(), mult, str(exc)))
                    continue
                xi = K.gen()
                st = state.lift(K)
            beta, alpha = _bezout(q, m)
            l = q * jc + m * ic
            F1 = _substitute(F.change_field(K) if K != L else F, xi, alpha, beta, q, m, l, K)
            nst = st.step(xi, alpha, beta, q, m)
            if r == 1:
                out.append(PuiseuxBranch(K, nst.gamma, nst.Q, nst.exact, nst.lam, nst.N, F1, mult))
            else:
                _branches(F1, nst, budget, mult, out, unresolved, depth + 1)


def _solve_regular(F, n, L):
    """Power series S with S(0) = 0 and F(T, S) = 0 mod T^n (F_Y(0, 0) != 0)."""
    zero, one = L.zero, L.one
    dy = F.degree_in(1)
    A = [[zero] * (F.degree_in(0) + 1) for _ in range(dy + 1)]
    for (j, i), c in F.terms.items():
        A[i][j] = c
    S = [zero]
    k = 1
    while k < n:
        k = min(2 * k, n)
        val = [zero]
        der = [zero]
        for i in range(dy, -1, -1):
            if i < dy:
                der = series.add(series.mul(der, S, k, zero), series.scale(A[i + 1][:k], i + 1), zero)
            val = series.add(series.mul(val, S, k, zero), A[i][:k], zero)
        corr = series.mul(val, series.inverse(der + [zero] * (k - len(der)), k, one, zero), k, zero)
        S = series.sub(S, corr, zero)[:k]
    return (S + [zero] * n)[:n]


def _local_uv(P, d=None):
    """v^e P(1/v, u/v) as a BiPoly in (u, v)."""
    e = P.total_degree() if d is None else d
    return BiPoly(P.field, {(j, e - i - j): c for (i, j), c in P.terms.items()}, ("u", "v"))


@dataclass
class BranchSet:
    branches: list
    unresolved: list
    factors: list  # (Q_i, multiplicity)


def puiseux_branches_at_infinity(P, p=None, budget=DEFAULT_BUDGET):
    """Branches of P = 0 through [1, 0, 0] (P already in standard position), with multiplicity."""
    if P.is_zero():
        raise DegeneratePolar("polar polynomial vanishes identically")
    Qloc = _local_uv(P)
    out = []
    unresolved = []
    factors = squarefree_factors(Qloc, 0)
    for Qi, mult in factors:
        if Qi.constant_term():
            continue
        F = _poly_terms_TY(Qi)
        start = _State(QQ, QQ.one, 1, [], QQ.one, 0)
        found = []
        _branches(F, start, budget, mult, found, unresolved)
        for b in found:
            b.point = p
        # every branch meets v = 0 with multiplicity Q; conjugates included
        total = sum(b.conjugates * b.Q for b in found) + sum(u.degree for u in unresolved if u.multiplicity == mult)
        expected = Qi.restrict(1).order()
        assert unresolved or total == expected, f"ramification count {total} != {expected}"
        out.extend(found)
    return BranchSet(out, unresolved, factors)


def polar_branches(f, p, budget=DEFAULT_BUDGET):
    moved, _ = move_to_standard(f, p)
    P = moved.diff(1)
    return puiseux_branches_at_infinity(P, p, budget), moved


# ---------------------------------------------------------------------------
# limits along branches


def default_trunc(f):
    return 4 * f.total_degree() ** 2


def _h_along(h, d, branch, n):
    """h(U(T), gamma T^Q) mod T^n."""
    L = branch.field
    zero = L.zero
    U = branch.u_series(n)
    du = h.degree_in(0)
    Upow = series.powers(U, du, n, L.one, zero)
    H = [zero] * n
    gpow = {}
    for (i, j), c in h.terms.items():
        t0 = branch.Q * j
        if t0 >= n:
            continue
        if j not in gpow:
            gpow[j] = branch.gamma ** j
        coef = gpow[j] * L(c)
        for s, x in enumerate(Upow[i][: n - t0]):
            if x:
                H[t0 + s] = H[t0 + s] + coef * x
    return H


def _exact_length(h, branch):
    """Enough terms to evaluate h along an exact branch without truncation."""
    return h.degree_in(0) * max(len(branch.exact), 1) + branch.Q * h.degree_in(1) + 2


def branch_limit(f, branch, trunc=None, *, moved=None, residual_check=True):
    """Limit of f along the branch and the order k in the parameter T."""
    if moved is None:
        moved, _ = move_to_standard(f, branch.point)
    d = moved.total_degree()
    h = _local_uv(moved, d)
    L = branch.field
    bound = trunc if trunc is not None else default_trunc(f)
    Qd = branch.Q * d
    exact = branch.regular is None
    extra = min(8, bound)
    while True:
        n = max(Qd + extra + 1, _exact_length(h, branch)) if exact else Qd + extra + 1
        H = _h_along(h, d, branch, n)
        if residual_check and not exact:
            _check_residual(moved, branch, n)
        lo = series.order(H)
        if lo is not None and lo < Qd:
            return BranchLimit(Infinity, Qd - lo)
        c = H[Qd] if Qd < len(H) else L.zero
        nxt = series.order(H[Qd + 1:])
        if nxt is not None:
            value = c / branch.gamma ** d
            return BranchLimit(_classify(value), nxt + 1, value)
        if exact or extra >= bound:
            value = c / branch.gamma ** d
            _raise_degenerate(moved, value, exact)
            raise TruncationExhausted(f"order of f - c along a polar branch exceeds {bound}")
        extra = min(2 * extra, bound)


def _check_residual(moved, branch, n):
    Qloc = _local_uv(moved.diff(1))
    R = _h_along(Qloc, None, branch, n)
    # the first N + (regular precision) coefficients must vanish
    assert series.order(R) is None, "polar branch does not satisfy its equation"


def _raise_degenerate(moved, value, exact):
    fld = value.field if hasattr(value, "field") and not isinstance(value, Fraction) else QQ
    fc = moved.change_field(fld) - BiPoly.const(fld, value)
    g = bipoly_gcd(fc, moved.diff(1).change_field(fld))
    if not g.is_constant() or exact:
        raise DegeneratePolar(f"f - {value} and f_y share a component")


def _classify(value):
    if is_rational(value):
        return to_rational(value)
    return AlgebraicClass(minimal_polynomial(value))


# ---------------------------------------------------------------------------
# counts


@dataclass(frozen=True)
class PolarCandidate:
    value: object  # Fraction, AlgebraicClass or Infinity
    nu: int  # total over all conjugate values for an AlgebraicClass


def _limits(f, p, trunc, budget):
    bs, moved = polar_branches(f, p, budget)
    if bs.unresolved:
        u = bs.unresolved[0]
        raise NeedsExtension(f"polar branch class of degree {u.degree} needs a larger extension: {u.reason}")
    return [(b, branch_limit(f, b, trunc, moved=moved)) for b in bs.branches]


def candidate_values_at_infinity(f, p, trunc=None, budget=DEFAULT_BUDGET):
    """Limits of f along the polar branches at p, each with the summed order."""
    totals = {}
    for b, lim in _limits(f, p, trunc, budget):
        totals[lim.value] = totals.get(lim.value, 0) + b.multiplicity * b.conjugates * lim.k
    return [PolarCandidate(v, n) for v, n in sorted(totals.items(), key=lambda kv: _sort_key(kv[0]))]


def _sort_key(v):
    if isinstance(v, Fraction):
        return (0, v, ())
    if isinstance(v, AlgebraicClass):
        return (1, Fraction(v.minpoly.degree()), tuple(v.minpoly.coeffs))
    return (2, Fraction(0), ())


def nu_via_polar(f, p, c, trunc=None, budget=DEFAULT_BUDGET, candidates=None):
    """Number of points of f = t on f_y = 0 tending to p as t -> c.

    For an AlgebraicClass (or an irreducible polynomial) the count per conjugate value is returned.
    """
    cands = candidates if candidates is not None else candidate_values_at_infinity(f, p, trunc, budget)
    if isinstance(c, UniPoly):
        c = AlgebraicClass(c.monic())
    if isinstance(c, AlgebraicClass):
        total = sum(pc.nu for pc in cands if pc.value == c)
        return total // c.minpoly.degree()
    if c is Infinity:
        return sum(pc.nu for pc in cands if pc.value is Infinity)
    c = Fraction(c)
    return sum(pc.nu for pc in cands if isinstance(pc.value, Fraction) and pc.value == c)


__all__ = [
    "AlgebraicClass", "BranchLimit", "BranchSet", "DegeneratePolar", "PolarCandidate", "PuiseuxBranch",
    "TruncationExhausted", "branch_limit", "candidate_values_at_infinity", "default_trunc", "nu_via_polar",
    "polar_branches", "puiseux_branches_at_infinity",
]
