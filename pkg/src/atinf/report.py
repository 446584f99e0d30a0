"""Orchestration of the full analysis and its JSON form."""
from __future__ import annotations

import json
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .affine import NonIsolatedCriticalLocus, affine_critical_values, global_invariants
from .algebra.fields import Budget, DEFAULT_BUDGET, NeedsExtension
from .algebra.unipoly import UniPoly
from .chart import Infinity, find_point, points_at_infinity
from .milnor import (
    INFINITE, CandidateClass, NonIsolatedAtC, NonIsolatedForAllT, degree_bound, milnor_at, milnor_generic,
    vanishing_cycles, vanishing_cycles_class, vanishing_cycles_infinity,
)
from .polar import AlgebraicClass, DegeneratePolar, TruncationExhausted, candidate_values_at_infinity, nu_via_polar
from .resolve import (
    IncompleteResolution, IrrationalCenter, annotation_multiset, arrow_count, condition_R, dual_graph_dot, g_set,
    resolve_indeterminacy,
)

SCHEMA_VERSION = 1
REGULAR = "Regular"
CRITICAL = "CriticalAtInfinity"
UNANALYZABLE = "Unanalyzable"


@dataclass
class Options:
    point: tuple | None = None  # (a, b) to restrict the analysis to one point
    values: tuple = ()  # extra finite values to classify
    resolve: bool = False
    gtilde: bool = False
    budget: Budget = DEFAULT_BUDGET
    trunc: int | None = None
    threads: int | None = None  # None: ATINF_THREADS or 1
    samples: int = 5  # random non-candidate values checked per point


@dataclass
class PointValueVerdict:
    point: str
    c: object  # Fraction, AlgebraicClass or Infinity
    mu_c: object = None
    mu_gen: int | None = None
    nu: int | None = None
    nu_polar: int | None = None
    agree: bool | None = None
    g_tilde: int | None = None
    condition_r: str | None = None
    label: str | None = None
    reason: str | None = None
    notes: list = field(default_factory=list)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class PointReport:
    point: object
    mu_gen: int | None = None
    bound: int | None = None
    rows: list = field(default_factory=list)
    resolution: dict | None = None
    dot: str | None = None
    checks: list = field(default_factory=list)


@dataclass
class Report:
    polynomial: str
    degree: int
    points: list
    residual: list  # ResidualFactor
    sigma_fin: list
    sigma_fin_classes: list
    sigma_inf: list
    sigma_inf_classes: list
    affine: object
    affine_error: str | None
    invariants: object
    checks: list

    @property
    def rows(self):
        return [r for pr in self.points for r in pr.rows]

    @property
    def partial(self):
        return any(r.label == UNANALYZABLE for r in self.rows) or self.affine_error is not None


def _label(nu):
    return REGULAR if nu == 0 else CRITICAL


def _class_key(poly):
    return poly.monic().with_var("t")


def _analyze_point(f, p, opts):
    pr = PointReport(p)
    label = p.label()
    try:
        gen = milnor_generic(f, p)
    except NonIsolatedForAllT as exc:
        pr.rows.append(PointValueVerdict(label, None, label=UNANALYZABLE, reason=str(exc)))
        return pr
    pr.mu_gen = gen.mu_gen
    pr.bound = degree_bound(f, p)

    polar = None
    polar_error = None
    try:
        polar = candidate_values_at_infinity(f, p, opts.trunc, opts.budget)
    except (DegeneratePolar, TruncationExhausted, NeedsExtension) as exc:
        polar_error = f"{type(exc).__name__}: {exc}"

    values = set(gen.candidates) | {Fraction(v) for v in opts.values}
    classes = {_class_key(c.poly) for c in gen.classes}
    if polar:
        for pc in polar:
            if isinstance(pc.value, Fraction):
                values.add(pc.value)
            elif isinstance(pc.value, AlgebraicClass):
                classes.add(_class_key(pc.value.minpoly))

    res = rg = None
    res_error = None
    if opts.resolve or opts.gtilde:
        try:
            if opts.resolve:
                res = resolve_indeterminacy(f, p, opts.budget)
                pr.resolution = {
                    "curves": len(res.curves),
                    "annotations": annotation_multiset(res),
                    "arrows": arrow_count(res),
                    "complete": res.complete,
                }
                pr.dot = dual_graph_dot(res)
            if opts.gtilde:
                rg = resolve_indeterminacy(f, p, opts.budget, maps=("f", "fx", "fy"))
        except (IncompleteResolution, IrrationalCenter, NeedsExtension) as exc:
            res_error = f"{type(exc).__name__}: {exc}"

    for c in sorted(values):
        row = PointValueVerdict(label, c, mu_gen=gen.mu_gen)
        try:
            vc = vanishing_cycles(f, p, c, gen)
            row.mu_c, row.nu = vc.mu_c, vc.nu
            row.label = _label(vc.nu)
        except NonIsolatedAtC as exc:
            row.mu_c = INFINITE
            row.label, row.reason = UNANALYZABLE, str(exc)
        _polar_fill(row, f, p, c, polar, polar_error, opts)
        _resolution_fill(row, res, rg, c, res_error)
        pr.rows.append(row)

    for poly in sorted(classes, key=lambda q: (q.degree(), q.coeffs)):
        row = PointValueVerdict(label, AlgebraicClass(poly), mu_gen=gen.mu_gen)
        try:
            vc = vanishing_cycles_class(f, p, CandidateClass(poly), gen)
            row.mu_c, row.nu = vc.mu_c, vc.nu
            row.label = _label(vc.nu)
        except NonIsolatedAtC as exc:
            row.mu_c = INFINITE
            row.label, row.reason = UNANALYZABLE, str(exc)
        except NeedsExtension as exc:
            row.label, row.reason = UNANALYZABLE, str(exc)
        _polar_fill(row, f, p, poly, polar, polar_error, opts)
        row.notes.append("per conjugate value")
        pr.rows.append(row)

    row = PointValueVerdict(label, Infinity, mu_gen=gen.mu_gen)
    vc = vanishing_cycles_infinity(f, p, gen)
    row.mu_c, row.nu = vc.mu_c, vc.nu
    _polar_fill(row, f, p, Infinity, polar, polar_error, opts)
    if rg is not None:
        row.g_tilde = g_set(rg, Infinity).components
        if row.nu > 0 and row.g_tilde == 0:
            row.notes.append("nu > 0 while g~ = 0: no vanishing cycles condition and gradient condition differ at c = inf")
    elif res_error:
        row.notes.append(res_error)
    row.notes.append("no combined regular/critical label at c = inf")
    pr.rows.append(row)

    pr.checks.extend(_point_checks(f, p, pr, gen, values, classes, polar, opts))
    return pr


def _polar_fill(row, f, p, c, polar, polar_error, opts):
    if polar is None:
        row.notes.append(f"polar oracle unavailable ({polar_error})")
        return
    row.nu_polar = nu_via_polar(f, p, c, opts.trunc, opts.budget, candidates=polar)
    if row.nu is not None:
        row.agree = row.nu == row.nu_polar


def _resolution_fill(row, res, rg, c, res_error):
    if res_error:
        row.notes.append(res_error)
    if res is not None and res.complete:
        v = condition_R(res, c)
        row.condition_r = str(v)
    if rg is not None and rg.complete:
        row.g_tilde = g_set(rg, c).components


def _point_checks(f, p, pr, gen, values, classes, polar, opts):
    label = p.label()
    out = []
    inf_row = pr.rows[-1]
    out.append(Check(f"degree identity at {label}", gen.mu_gen + inf_row.nu == pr.bound,
                     f"{gen.mu_gen} + {inf_row.nu} = {pr.bound}"))
    for r in pr.rows:
        name = f"({label}, {_text(r.c)})"
        if r.agree is not None:
            out.append(Check(f"polar agrees {name}", r.agree, f"{r.nu} vs {r.nu_polar}"))
        if r.nu is not None and r.g_tilde is not None:
            out.append(Check(f"nu >= g~ {name}", r.nu >= r.g_tilde, f"{r.nu} >= {r.g_tilde}"))
        if r.condition_r is not None and r.nu is not None and r.c is not Infinity:
            out.append(Check(f"R matches nu {name}", (r.condition_r == "Holds") == (r.nu == 0),
                             f"{r.condition_r}, nu={r.nu}"))
        if isinstance(r.mu_c, int) and r.c is not Infinity:
            out.append(Check(f"semicontinuity {name}", r.mu_c >= gen.mu_gen, f"{r.mu_c} >= {gen.mu_gen}"))
    if polar is not None:
        missing = [pc.value for pc in polar if pc.nu > 0 and isinstance(pc.value, Fraction)
                   and pc.value not in gen.candidates]
        out.append(Check(f"polar values covered by harvest at {label}", not missing,
                         ", ".join(str(v) for v in missing)))
    rng = random.Random(f"{f.format()}|{label}")
    samples = []
    while len(samples) < opts.samples:
        c = Fraction(rng.randint(-97, 97), rng.randint(1, 13))
        if c not in values and c not in samples:
            samples.append(c)
    bad = []
    for c in samples:
        try:
            mu = milnor_at(f, p, c)
        except Exception:  # pragma: no cover - defensive
            continue
        if mu != gen.mu_gen:
            bad.append(str(c))
    out.append(Check(f"random non-candidates regular at {label}", not bad, ", ".join(bad)))
    return out


def _threads(opts):
    if opts.threads:
        return max(1, opts.threads)
    try:
        return max(1, int(os.environ.get("ATINF_THREADS", "1")))
    except ValueError:
        return 1


def analyze(f, options=None):
    opts = options or Options()
    pts, residual = points_at_infinity(f)
    if opts.point is not None:
        pts = [find_point(f, *opts.point)]
    n = _threads(opts)
    if n == 1 or len(pts) <= 1:
        prs = [_analyze_point(f, p, opts) for p in pts]
    else:
        with ThreadPoolExecutor(max_workers=n) as ex:
            prs = list(ex.map(lambda p: _analyze_point(f, p, opts), pts))

    affine = None
    affine_error = None
    try:
        affine = affine_critical_values(f, opts.budget)
    except NonIsolatedCriticalLocus as exc:
        affine_error = f"NonIsolatedCriticalLocus: {exc}"

    rows = [r for pr in prs for r in pr.rows]
    sigma_inf, sigma_inf_classes = {}, {}
    for r in rows:
        if r.c is None or r.c is Infinity or r.nu is None:
            continue
        target = sigma_inf if isinstance(r.c, Fraction) else sigma_inf_classes
        key = r.c if isinstance(r.c, Fraction) else r.c.minpoly
        target[key] = target.get(key, 0) + r.nu
    sigma_inf = sorted(c for c, v in sigma_inf.items() if v > 0)
    sigma_inf_classes = sorted((q for q, v in sigma_inf_classes.items() if v > 0), key=lambda q: (q.degree(), q.coeffs))

    checks = [c for pr in prs for c in pr.checks]
    invariants = None
    if affine is not None and opts.point is None:
        analyzable = [(r.point, r.c, r.nu) for r in rows if r.c is not None]
        invariants = global_invariants(f, analyzable, affine, residual)
        polar_rows = [(r.point, r.c, r.nu_polar) for r in rows if r.c is not None]
        if all(r.nu_polar is not None for r in rows if r.c is not None):
            lam_polar = global_invariants(f, polar_rows, affine, residual).lam
            checks.append(Check("lambda from polar oracle", lam_polar == invariants.lam,
                                f"{lam_polar} vs {invariants.lam}"))
        for c, mu in affine.rational_values:
            ok = mu > 0 or any(cp.value_poly == _class_key(UniPoly.gen(affine.eliminant.field, "t") - c)
                               for cp in affine.classes)
            checks.append(Check(f"critical value {c} confirmed", ok, f"mu={mu}"))
    sigma_fin = [c for c, _ in affine.rational_values] if affine else []
    sigma_fin_classes = [q for q, _ in affine.irrational_classes] if affine else []
    return Report(f.format(), f.total_degree(), prs, list(residual), sigma_fin, sigma_fin_classes,
                  sigma_inf, sigma_inf_classes, affine, affine_error, invariants, checks)


# ---------------------------------------------------------------------------
# JSON


def _text(c):
    if c is None:
        return "generic"
    if c is Infinity:
        return "inf"
    if isinstance(c, AlgebraicClass):
        return f"root of {c.minpoly.format()}"
    return str(c)


def _q(x):
    if x is None:
        return None
    if x is Infinity or x == INFINITE:
        return "inf"
    if isinstance(x, Fraction):
        return {"num": str(x.numerator), "den": str(x.denominator)}
    if isinstance(x, int):
        return x
    if isinstance(x, AlgebraicClass):
        return {"minpoly": x.minpoly.format(), "degree": x.minpoly.degree()}
    return str(x)


def _sigma(values, classes):
    return [str(c) for c in values] + [{"minpoly": q.format(), "degree": q.degree()} for q in classes]


def _row_json(r):
    return {
        "c": _q(r.c) if r.c is not None else "generic",
        "mu_c": _q(r.mu_c),
        "mu_gen": r.mu_gen,
        "nu": r.nu,
        "nu_polar": r.nu_polar,
        "nu_agree": r.agree,
        "g_tilde": r.g_tilde,
        "condition_R": r.condition_r,
        "label": r.label,
        "reason": r.reason,
        "notes": list(r.notes),
    }


def to_dict(r):
    d = {
        "schema": SCHEMA_VERSION,
        "tool": {"name": "atinf", "version": __version__},
        "polynomial": r.polynomial,
        "degree": r.degree,
        "points_at_infinity": [
            {
                "point": pr.point.label(),
                "a": _q(pr.point.a),
                "b": _q(pr.point.b),
                "d_p": pr.point.d_p,
                "mu_gen": pr.mu_gen,
                "degree_bound": pr.bound,
                "verdicts": [_row_json(x) for x in pr.rows],
                "resolution": pr.resolution,
            }
            for pr in r.points
        ],
        "residual_classes": [{"factor": rf.poly.format(), "degree": rf.degree, "multiplicity": rf.multiplicity}
                             for rf in r.residual],
        "sigma_fin": _sigma(r.sigma_fin, r.sigma_fin_classes),
        "sigma_infinity": _sigma(r.sigma_inf, r.sigma_inf_classes),
        "affine": None,
        "global": None,
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in r.checks],
        "partial": r.partial,
    }
    if r.affine is not None:
        a = r.affine
        d["affine"] = {
            "eliminant": a.eliminant.format(),
            "mu_total": _q(a.mu_total),
            "rational_values": [{"c": _q(c), "mu": mu} for c, mu in a.rational_values],
            "irrational_classes": [{"factor": q.format(), "degree": k} for q, k in a.irrational_classes],
            "critical_points": [{"x": _q(p.x), "y": _q(p.y), "value": _q(p.value), "mu": p.mu} for p in a.points],
            "residual_mu": a.residual_mu,
        }
    elif r.affine_error:
        d["affine"] = {"error": r.affine_error, "mu_total": "inf"}
    if r.invariants is not None:
        g = r.invariants
        d["global"] = {"mu": _q(g.mu), "lambda": g.lam, "rankH1": _q(g.rank_h1),
                       "rankH1_lower_bound": g.lower_bound, "notes": list(g.notes)}
    return d


def emit_json(r):
    return json.dumps(to_dict(r), sort_keys=True, indent=2) + "\n"


def emit_dot(r):
    return "".join(pr.dot for pr in r.points if pr.dot)


__all__ = ["Check", "Options", "PointReport", "PointValueVerdict", "Report", "analyze", "emit_dot", "emit_json",
           "to_dict", "CRITICAL", "REGULAR", "UNANALYZABLE"]
