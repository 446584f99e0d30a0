"""Blowup resolution of f: P^2 --> P^1 over a point at infinity.

Charts are affine planes with coordinates (a, b).  Blowing up a center
(A0, B0) of a parent chart with coordinates (A, B) creates an exceptional
curve E and two charts:

* main:  A = A0 + a,      B = B0 + a*b   (E is a = 0, parametrised by b)
* aux:   A = A0 + a*b,    B = B0 + b     (E is b = 0; only its point a = 0, b = inf, is used)

In the root chart (u, v) of the point, x = 1/v and y = u/v, and the line at
infinity is v = 0.  Every rational map is kept as a coprime pair num/den.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra.bipoly import BiPoly, bipoly_gcd, bipoly_divide
from .algebra.factor import irreducible_factors, minimal_polynomial
from .algebra.fields import QQ, DEFAULT_BUDGET, ExtensionField, NeedsExtension, is_rational, to_rational
from .algebra.unipoly import UniPoly, squarefree_decomposition, uni_gcd
from .chart import Infinity, move_to_standard

LINF = "Linf"
MAX_BLOWUPS = 400


class IrrationalCenter(ArithmeticError):
    pass


class IncompleteResolution(ArithmeticError):
    pass


@dataclass(frozen=True)
class Constant:
    value: object  # Fraction, number-field element, or Infinity
    m: int

    def label(self):
        v = "inf" if self.value is Infinity else _value_text(self.value)
        return f"{v}^{self.m}"


@dataclass(frozen=True)
class Dicritical:
    degree: int

    def label(self):
        return f"dicr:{self.degree}"


def _value_text(v):
    if is_rational(v):
        return str(to_rational(v))
    return f"[{minimal_polynomial(v).format()}]"


@dataclass
class Chart:
    id: int
    field: object
    kind: str  # "root", "main" or "aux"
    parent: int | None
    center: tuple | None  # (A0, B0) in the parent's coordinates
    curve: int | None
    maps: dict  # name -> (num, den)

    def value_at(self, name, a, b):
        num, den = self.maps[name]
        n, d = num(a, b), den(a, b)
        if not d:
            return None if not n else Infinity
        return n / d


@dataclass
class ExceptionalCurve:
    id: int
    main: int  # chart ids
    aux: int
    field: object
    weight: int  # number of conjugate copies over QQ
    annotation: object
    annotations: dict  # per map
    at_zero: object  # neighbour at b = 0: curve id, LINF or None
    at_inf: object  # neighbour at b = inf
    parent: object  # curve whose point was blown up (LINF-free), None for the first
    blown: list = field(default_factory=list)  # monic factors in b of blown-up centers
    blown_inf: bool = False

    def is_blown(self, b0):
        return any(not q(b0) for q in self.blown)


@dataclass
class Obstruction:
    curve: object
    factor: UniPoly
    reason: str


@dataclass
class Resolution:
    point: object
    f: BiPoly  # in standard position
    charts: list
    curves: list
    obstructions: list
    map_names: tuple

    @property
    def complete(self):
        return not self.obstructions

    def curve(self, cid):
        return self.curves[cid - 1]

    def neighbours(self):
        """Edges (c1, c2) between adjacent curves (LINF included)."""
        edges = []
        for C in self.curves:
            if C.at_zero is not None and not C.is_blown(C.field.zero):
                edges.append((C.id, C.at_zero))
            if C.at_inf is not None and not C.blown_inf:
                edges.append((C.id, C.at_inf))
        return edges

    def annotations(self, name="f"):
        return [C.annotations[name] for C in self.curves]


# ---------------------------------------------------------------------------
# map bookkeeping


def _coprime(num, den, known=False):
    """Cancel common factors; ``known`` skips the gcd when only scaling is needed."""
    if num.is_zero():
        return num, BiPoly.const(den.field, 1, den.vars)
    if not known:
        g = bipoly_gcd(num, den)
        if not g.is_constant():
            num, den = bipoly_divide(num, g), bipoly_divide(den, g)
    # normalise so den has leading coefficient one
    lc = den.sorted_terms()[0][1]
    inv = den.field.one / lc
    return num * inv, den * inv


def _local_map(P, d, vars=("a", "b")):
    """P(x, y) = N(u, v) / v^d with x = 1/v, y = u/v."""
    N = BiPoly(P.field, {(j, d - i - j): c for (i, j), c in P.terms.items()}, vars)
    D = BiPoly(P.field, {(0, d): P.field.one}, vars)
    return _coprime(N, D)


def _root_maps(moved, names):
    d = moved.total_degree()
    maps = {}
    for name in names:
        if name == "f":
            P, e = moved, d
        elif name == "fx":
            P, e = moved.diff(0), d - 1
        else:
            P, e = moved.diff(1), d - 1
        maps[name] = _local_map(P, max(e, 0))
    return maps


def _transform(num, den, A0, B0, kind, K):
    vars = ("a", "b")
    num, den = num.change_field(K).rename(vars), den.change_field(K).rename(vars)
    a, b = BiPoly.gens(K, vars)
    if kind == "main":
        X, Y = a + A0, a * b + B0
        k = 0
    else:
        X, Y = a * b + A0, b + B0
        k = 1
    n, d = num.compose(X, Y), den.compose(X, Y)
    n, (i, j) = n.strip_monomial(k)
    d, (i2, j2) = d.strip_monomial(k)
    e = (i + j) - (i2 + j2)
    if e > 0:
        n = n.mul_monomial(e if k == 0 else 0, e if k == 1 else 0)
    elif e < 0:
        d = d.mul_monomial(-e if k == 0 else 0, -e if k == 1 else 0)
    # coprime pairs stay coprime under a blowup once the exceptional factor is gone
    return _coprime(n, d, known=True)


def _annotate(num, den):
    """Annotation of the curve a = 0 for the map num/den in a main chart."""
    e = num.order_in(0) - den.order_in(0) if not num.is_zero() else None
    if num.is_zero():
        return Constant(num.field.zero, 0)  # map identically zero (degenerate partial)
    if e > 0:
        return Constant(num.field.zero, e)
    if e < 0:
        return Constant(Infinity, -e)
    N0, D0 = num.restrict(0), den.restrict(0)
    g = uni_gcd(N0, D0)
    if g.degree() > 0:
        N0, D0 = N0 // g, D0 // g
    if N0.degree() <= 0 and D0.degree() <= 0:
        c = N0.coeff(0) / D0.coeff(0)
        S = num - den * c
        return Constant(c, S.order_in(0))
    return Dicritical(max(N0.degree(), D0.degree()))


def _indeterminacy_poly(chart):
    """Polynomial in b whose roots are the indeterminacy points on a = 0 (None if none)."""
    total = None
    for num, den in chart.maps.values():
        N0, D0 = num.restrict(0), den.restrict(0)
        if N0.is_zero() and D0.is_zero():
            raise AssertionError("map not coprime")
        g = uni_gcd(N0, D0)
        if g.degree() <= 0:
            continue
        total = g if total is None else total * g // uni_gcd(total, g)
    return total


def _aux_indeterminate(chart):
    for num, den in chart.maps.values():
        if not num.constant_term() and not den.constant_term():
            return True
    return False


# ---------------------------------------------------------------------------
# the resolution loop


class _Builder:
    def __init__(self, moved, point, names, budget, max_blowups):
        self.moved = moved
        self.point = point
        self.names = names
        self.budget = budget
        self.max_blowups = max_blowups
        self.charts = []
        self.curves = []
        self.obstructions = []

    def new_chart(self, **kw):
        ch = Chart(len(self.charts), **kw)
        self.charts.append(ch)
        return ch

    def run(self):
        root = self.new_chart(field=QQ, kind="root", parent=None, center=None, curve=None,
                              maps={k: (n.rename(("u", "v")), d.rename(("u", "v")))
                                    for k, (n, d) in _root_maps(self.moved, self.names).items()})
        pending = []
        if any(not n.constant_term() and not d.constant_term() for n, d in root.maps.values()):
            pending.append(("root", None, root, QQ.zero, QQ))
        while pending:
            if len(self.curves) >= self.max_blowups:
                raise IncompleteResolution(f"more than {self.max_blowups} blowups")
            pending.extend(self.blow(*pending.pop(0)))
        return Resolution(self.point, self.moved, self.charts, self.curves, self.obstructions, tuple(self.names))

    def blow(self, where, C, chart, b0, K):
        """Blow up a point; returns further centres found on the new curve."""
        cid = len(self.curves) + 1
        if where == "root":
            A0, B0, at_zero, at_inf, parent = K.zero, K.zero, LINF, None, None
        elif where == "main":
            A0, B0 = K.zero, b0
            at_inf = C.id
            at_zero = C.at_zero if not b0 else None
            parent = C.id
        else:
            A0, B0 = K.zero, K.zero
            at_zero, at_inf, parent = C.id, C.at_inf, C.id
        main = self.new_chart(field=K, kind="main", parent=chart.id, center=(A0, B0), curve=cid,
                              maps={k: _transform(n, d, A0, B0, "main", K) for k, (n, d) in chart.maps.items()})
        aux = self.new_chart(field=K, kind="aux", parent=chart.id, center=(A0, B0), curve=cid,
                             maps={k: _transform(n, d, A0, B0, "aux", K) for k, (n, d) in chart.maps.items()})
        anns = {k: _annotate(n, d) for k, (n, d) in main.maps.items()}
        E = ExceptionalCurve(cid, main.id, aux.id, K, K.degree, anns[self.names[0]], anns,
                             at_zero, at_inf, parent)
        self.curves.append(E)
        out = []
        ind = _indeterminacy_poly(main)
        if ind is not None:
            for psi, _ in irreducible_factors(ind.with_var("b"), self.budget):
                E.blown.append(psi)
                if psi.degree() == 1:
                    out.append(("main", E, main, -psi.coeff(0) / psi.lc(), K))
                    continue
                name = f"e{len(self.curves)}"
                try:
                    L = ExtensionField(K, psi.with_var(name), name, budget=self.budget)
                except NeedsExtension as exc:
                    self.obstructions.append(Obstruction(cid, psi, str(exc)))
                    continue
                lifted = self._lift_chart(main, L)
                out.append(("main", E, lifted, L.gen(), L))
        if _aux_indeterminate(aux):
            E.blown_inf = True
            out.append(("aux", E, aux, K.zero, K))
        return out

    def _lift_chart(self, chart, L):
        return Chart(chart.id, L, chart.kind, chart.parent, chart.center, chart.curve,
                     {k: (n.change_field(L), d.change_field(L)) for k, (n, d) in chart.maps.items()})


def resolve_indeterminacy(f, p, budget=DEFAULT_BUDGET, max_blowups=MAX_BLOWUPS, maps=("f",)):
    """Blow up over p until the listed maps (any of "f", "fx", "fy") are everywhere defined."""
    moved, _ = move_to_standard(f, p)
    return _Builder(moved, p, list(maps), budget, max_blowups).run()


# ---------------------------------------------------------------------------
# Condition R

REASONS = ("SingularStrictTransform", "NonTransverseContact", "PassesThroughCorner", "ExceptionalCurveInFiber")


@dataclass(frozen=True)
class Verdict:
    holds: bool
    reasons: tuple = ()

    @property
    def reason(self):
        return self.reasons[0] if self.reasons else None

    def __str__(self):
        return "Holds" if self.holds else f"Fails({self.reason})"


def _strip_blown(P, blown):
    for q in blown:
        while P.degree() > 0 and (P % q).is_zero():
            P = P // q
    return P


def condition_R(res, c):
    """Is the strict transform of f = c smooth and transverse to the exceptional set?"""
    if res.obstructions:
        raise IncompleteResolution("resolution has irrational centers beyond the budget")
    found = set()
    for E in res.curves:
        K = E.field
        cK = K(c)
        ann = E.annotations["f"]
        if isinstance(ann, Constant) and ann.value is not Infinity and ann.value == cK:
            found.add("ExceptionalCurveInFiber")
        main = res.charts[E.main]
        num, den = main.maps["f"]
        S = num - den * cK
        if S.is_zero():
            continue
        S, _ = S.strip_monomial(0)
        corner0 = E.at_zero is not None and E.at_zero != LINF
        if E.at_zero is not None:
            S, _ = S.strip_monomial(1)
        S0 = _strip_blown(S.restrict(0), E.blown)
        if S0.degree() > 0:
            Sa0 = S.diff(0).restrict(0)
            _, parts = squarefree_decomposition(S0)
            for P, mult in parts:
                if mult >= 2:
                    if uni_gcd(P, Sa0).degree() > 0:
                        found.add("SingularStrictTransform")
                    if uni_gcd(P, Sa0).degree() < P.degree():
                        found.add("NonTransverseContact")
            if corner0 and not S0.coeff(0) and not E.is_blown(K.zero):
                found.add("PassesThroughCorner")
        if not E.blown_inf:
            aux = res.charts[E.aux]
            n2, d2 = aux.maps["f"]
            S2 = n2 - d2 * cK
            if S2.is_zero():
                continue
            S2, _ = S2.strip_monomial(1)
            if E.at_inf is not None:
                S2, _ = S2.strip_monomial(0)
            if not S2.constant_term():
                if not S2.diff(0).constant_term() and not S2.diff(1).constant_term():
                    found.add("SingularStrictTransform")
                elif S2.restrict(1).order() != 1:
                    found.add("NonTransverseContact")
                if E.at_inf is not None and E.at_inf != LINF:
                    found.add("PassesThroughCorner")
    reasons = tuple(r for r in REASONS if r in found)
    return Verdict(not reasons, reasons)


# ---------------------------------------------------------------------------
# the set G_{p,c}

ALWAYS = "always"


def _condition(num, den, c):
    """Restriction to a = 0 of (map = c): ALWAYS or a polynomial in b."""
    N0, D0 = num.restrict(0), den.restrict(0)
    P = D0 if c is Infinity else N0 - D0 * c
    return ALWAYS if P.is_zero() else P


def _holds_at_origin(num, den, c):
    n, d = num.constant_term(), den.constant_term()
    if c is Infinity:
        return not d
    return not (n - d * c)


@dataclass
class GSet:
    curves: list  # ids of exceptional curves contained in G
    points: list  # (curve id, factor in b or "inf", count)
    components: int


class _DSU:
    def __init__(self):
        self.parent = {}
        self.weight = {}

    def add(self, x, w):
        if x not in self.parent:
            self.parent[x] = x
            self.weight[x] = w

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[rx] = ry
            self.weight[ry] = min(self.weight[ry], self.weight[rx])


def g_set(res, c):
    if res.obstructions:
        raise IrrationalCenter("resolution has irrational centers beyond the budget")
    targets = {"f": c, "fx": QQ.zero, "fy": QQ.zero}
    full = []
    points = []
    for E in res.curves:
        K = E.field
        main = res.charts[E.main]
        conds = []
        for name, tgt in targets.items():
            num, den = main.maps[name]
            conds.append(_condition(num, den, tgt if tgt is Infinity else K(tgt)))
        polys = [q for q in conds if q is not ALWAYS]
        if not polys:
            full.append(E.id)
        else:
            g = polys[0]
            for q in polys[1:]:
                g = uni_gcd(g, q)
            if g.degree() > 0:
                g = _strip_blown(g.monic(), E.blown)
                for psi, _ in irreducible_factors(g) if g.degree() > 0 else []:
                    points.append((E.id, psi, psi.degree() * E.weight))
        if not E.blown_inf:
            aux = res.charts[E.aux]
            if all(_holds_at_origin(*aux.maps[name], tgt if tgt is Infinity else K(tgt))
                   for name, tgt in targets.items()):
                points.append((E.id, "inf", E.weight))
    dsu = _DSU()
    byid = {C.id: C for C in res.curves}
    for cid in full:
        dsu.add(("C", cid), byid[cid].weight)
    for a, b in res.neighbours():
        if a in full and b in full:
            dsu.union(("C", a), ("C", b))
    kept = []
    for cid, psi, count in points:
        E = byid[cid]
        if cid in full:
            continue
        key = ("P", cid, str(psi))
        neighbours = []
        if psi == "inf":
            neighbours.append(E.at_inf)
        elif psi.degree() == 1 and not psi.coeff(0):
            neighbours.append(E.at_zero)
        if any(n in full for n in neighbours):
            continue
        dsu.add(key, count)
        kept.append((cid, psi, count))
    roots = {dsu.find(x) for x in dsu.parent}
    total = sum(dsu.weight[r] for r in roots)
    return GSet(sorted(full), kept, total)


def g_tilde(f, p, c, budget=DEFAULT_BUDGET, max_blowups=MAX_BLOWUPS):
    """Number of connected components of G_{p,c} in a simultaneous resolution of f, f_x, f_y."""
    res = resolve_indeterminacy(f, p, budget, max_blowups, maps=("f", "fx", "fy"))
    return g_set(res, c).components


# ---------------------------------------------------------------------------
# DOT export


def _dot_value(v):
    return v.label()


def dual_graph_dot(res, fibers=()):
    """Deterministic DOT text for the dual graph of the exceptional set.

    Every dicritical curve of degree k carries k arrowheads (the branches of a
    generic level curve).  For each value c in ``fibers`` the strict transform
    of f = c adds one arrowhead per intersection point with the exceptional set.
    """
    lines = ["graph resolution {", '  node [shape=ellipse];']
    lines.append(f'  {LINF} [label="L_inf", shape=box];')
    for E in res.curves:
        label = E.annotation.label()
        if E.weight > 1:
            label += f" x{E.weight}"
        lines.append(f'  E{E.id} [label="{label}"];')
    for a, b in sorted(res.neighbours(), key=lambda e: (str(e[0]), str(e[1]))):
        lines.append(f"  E{a} -- {b if b == LINF else f'E{b}'};")
    arrows = 0
    for E in res.curves:
        if isinstance(E.annotation, Dicritical):
            for _ in range(E.annotation.degree * E.weight):
                arrows += 1
                lines.append(f'  A{arrows} [shape=point, label=""];')
                lines.append(f'  E{E.id} -- A{arrows} [dir=forward, arrowhead=normal, label="t"];')
    for c in fibers:
        for cid, count in _fiber_points(res, c):
            for _ in range(count):
                arrows += 1
                lines.append(f'  A{arrows} [shape=point, label=""];')
                lines.append(f'  E{cid} -- A{arrows} [dir=forward, arrowhead=normal, label="f={c}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _fiber_points(res, c):
    """(curve id, number of points) where the strict transform of f = c meets each curve."""
    out = []
    for E in res.curves:
        K = E.field
        ann = E.annotations["f"]
        if isinstance(ann, Constant) and ann.value is not Infinity and ann.value == K(c):
            continue
        num, den = res.charts[E.main].maps["f"]
        S = num - den * K(c)
        S, _ = S.strip_monomial(0)
        if E.at_zero is not None:
            S, _ = S.strip_monomial(1)
        S0 = _strip_blown(S.restrict(0), E.blown)
        n = 0
        if S0.degree() > 0:
            n += sum(psi.degree() for psi, _ in irreducible_factors(S0)) * E.weight
        if not E.blown_inf:
            n2, d2 = res.charts[E.aux].maps["f"]
            S2 = n2 - d2 * K(c)
            S2, _ = S2.strip_monomial(1)
            if E.at_inf is not None:
                S2, _ = S2.strip_monomial(0)
            if not S2.is_zero() and not S2.constant_term():
                n += E.weight
        if n:
            out.append((E.id, n))
    return out


def annotation_multiset(res):
    """Sorted labels of all curve annotations, each repeated by its weight."""
    out = []
    for E in res.curves:
        out.extend([E.annotation.label()] * E.weight)
    return sorted(out)


def arrow_count(res):
    return sum(E.annotation.degree * E.weight for E in res.curves if isinstance(E.annotation, Dicritical))


__all__ = [
    "ALWAYS", "Chart", "Constant", "Dicritical", "ExceptionalCurve", "GSet", "IncompleteResolution",
    "IrrationalCenter", "LINF", "Obstruction", "REASONS", "Resolution", "Verdict", "annotation_multiset",
    "arrow_count", "condition_R", "dual_graph_dot", "g_set", "g_tilde", "resolve_indeterminacy",
]
