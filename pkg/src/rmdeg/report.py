"""Run the whole pipeline on a rational map and collect a degree report."""

from __future__ import annotations

import itertools
import time
from contextlib import contextmanager
from dataclasses import dataclass, field

from . import __version__
from .bounds import (
    HOLDS,
    VIOLATED,
    Bound,
    BoundContext,
    NoetherCheck,
    lower_bounds,
    noether_obstruction,
    regularity_bound_check,
    upper_bounds,
)
from .document import Options
from .fiber import (
    DegreeResult,
    SamplingError,
    degree_via_general_fiber,
    graph_fiber_multiplicity,
)
from .ideal import Ideal
from .monomial import monomial_birationality_check
from .rees import ReesData, RationalMapSpec, build_rees_data, presentation_matrix, x_linear_part
from .resolution import BettiTable, GradedMatrix, minimal_free_resolution, syzygy_degree_vector

# how many Rees ideal generators the JSON report lists
REES_LISTING_LIMIT = 20

STAGES = ("syzygies", "betti", "rees", "fiber", "bounds")
STAGE_DEPENDENCIES = {
    "betti": ("betti",),
    "rees": ("syzygies", "rees"),
    "jdrank": ("syzygies", "rees"),
    "degree": ("fiber",),
    "bounds": ("syzygies", "rees", "fiber", "bounds"),
    "analyze": STAGES,
}


@contextmanager
def _stage(name: str, timings: dict):
    start = time.perf_counter()
    try:
        yield
    except Exception as exc:
        if not hasattr(exc, "stage"):
            exc.stage = name
        raise
    finally:
        timings[name] = round(time.perf_counter() - start, 6)


def common_factor_degree(f, g) -> int:
    """Degree of gcd(f, g), read off from lcm(f, g) = generator of (f) cap (g)."""
    if not f or not g:
        return 0
    ring = f.ring
    meet = Ideal(ring, [f]).intersect(Ideal(ring, [g]))
    lcm = min(meet.groebner(), key=lambda h: h.degree())
    return f.degree() + g.degree() - lcm.degree()


def improved_bound_side_condition(rees: ReesData, psi: GradedMatrix, d: int):
    """Whether some minimal-degree generator of L survives modulo the x-linear part.

    The condition asks for a generator g of L of the smallest syzygy degree
    with g outside (Lin + q S) after localizing at q. Membership after
    localization means c g lies in Lin + q S for some c in B outside q, i.e.
    ((Lin + q S) : g) cap B is not contained in q.
    """
    S = rees.S
    lin, _ = x_linear_part(rees.J)
    base = Ideal(S, list(lin) + [g.change_ring(S) for g in rees.q.gens], rees.J.budget)
    degs = [c - d for c in psi.col_degrees]
    dr = min(degs)
    cands = [g for g, k in zip(rees.L.gens, degs) if k == dr]
    for g in cands:
        if base.contains(g):
            continue
        conductor = base.quotient(g).eliminate(S.x_vars).restrict(rees.B)
        if conductor.issubset(rees.q):
            return True, f"a degree-{dr} generator of L is not in the x-linear part at the generic point of Y"
    return False, f"obstruction: every degree-{dr} generator of L lies in the x-linear part at the generic point of Y"


@dataclass
class DegreeReport:
    spec: RationalMapSpec
    options: Options
    stages: tuple
    psi: GradedMatrix | None = None
    syzygy_degrees: tuple | None = None
    betti: BettiTable | None = None
    rees: ReesData | None = None
    fiber: DegreeResult | None = None
    e_R: int | None = None
    context: BoundContext | None = None
    bounds: list = field(default_factory=list)
    regularity_check: Bound | None = None
    noether: NoetherCheck | None = None
    cross_check: dict | None = None
    monomial_check: dict | None = None
    char0_comparison: dict | None = None
    warnings: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    @property
    def degree(self) -> int | None:
        return self.fiber.degree if self.fiber else None

    @property
    def s(self) -> int | None:
        return self.rees.s if self.rees else None

    @property
    def birational(self) -> bool | None:
        if self.rees is not None and not self.spec.has_variety:
            return self.rees.s == self.spec.n
        if self.fiber is not None:
            return self.degree == 1
        return None

    def bound(self, name: str) -> Bound:
        for b in self.bounds:
            if b.name == name:
                return b
        raise KeyError(name)

    def all_verdicts(self) -> list[str]:
        out = [b.verdict for b in self.bounds]
        if self.regularity_check is not None:
            out.append(self.regularity_check.verdict)
        if self.noether is not None:
            out.append(self.noether.verdict)
        return out

    @property
    def violated(self) -> bool:
        return VIOLATED in self.all_verdicts()

    def applicable(self, kind: str) -> list[Bound]:
        return [b for b in self.bounds if b.kind == kind and b.applicable and b.value is not None]

    # --- serialization -----------------------------------------------------

    def invariants_json(self) -> dict:
        spec = self.spec
        out = {
            "variables": list(spec.ring.variables),
            "characteristic": spec.ring.p,
            "forms": [str(f) for f in spec.forms],
            "variety_ideal": [str(g) for g in spec.P.gens],
            "n": spec.n,
            "m": spec.m,
            "d": spec.d,
            "t": spec.t,
            "e_R": self.e_R,
        }
        if self.context is not None:
            c = self.context
            out.update({
                "codim_I": c.codim_I,
                "cohen_macaulay": c.cohen_macaulay,
                "nondegenerate": c.nondegenerate,
                "generically_finite": c.generically_finite,
                "common_factor_degree": c.delta,
            })
        if self.syzygy_degrees is not None:
            out["syzygy_degrees"] = list(self.syzygy_degrees)
        if self.rees is not None:
            out.update({
                "jdrank": self.rees.s,
                "analytic_spread": self.rees.ell,
                "linear_type": self.rees.linear_type,
            })
        out["birational"] = self.birational
        return out

    def degree_json(self) -> dict | None:
        if self.fiber is None:
            return {"timings": dict(self.timings)} if self.timings else None
        f = self.fiber
        return {
            "value": f.degree,
            "method": "multiplicity of a general fiber",
            "trials": len(f.trials),
            "seed": self.options.seed,
            "distribution": {str(k): v for k, v in sorted(f.distribution.items())},
            "reg_proxy": f.regularity,
            "reg_proxy_note": "specialization proxy: regularity of the saturated fiber ideal at sampled points",
            "cross_check": self.cross_check,
            "monomial_birationality": self.monomial_check,
            "timings": dict(self.timings),
            **({"characteristic_0": self.char0_comparison} if self.char0_comparison else {}),
        }

    def bounds_json(self) -> dict | None:
        if self.context is None:
            return None
        ups = self.applicable("upper") + self.applicable("equality")
        lows = self.applicable("lower") + self.applicable("equality")
        out = {
            "degree": [b.as_dict() for b in self.bounds],
            "regularity": self.regularity_check.as_dict() if self.regularity_check else None,
            "noether": None,
            "summary": {
                "min_upper": min((b.value for b in ups), default=None),
                "max_lower": max((b.value for b in lows), default=None),
                "violated": self.violated,
            },
        }
        if self.noether is not None:
            nc = self.noether
            out["noether"] = {
                "applicable": nc.applicable,
                "reason": nc.reason,
                "column_degrees": list(nc.column_degrees),
                "product": nc.product,
                "target": nc.target,
                "verdict": nc.verdict,
            }
        return out

    def rees_json(self) -> dict | None:
        if self.rees is None:
            return None
        r = self.rees
        jg = r.J.groebner()
        return {
            "presentation": {
                "row_degrees": list(self.psi.row_degrees),
                "column_degrees": list(self.psi.col_degrees),
                "columns": [[str(e) for e in col] for col in self.psi.columns],
            },
            "symmetric_ideal": [str(g) for g in r.L.gens],
            "rees_ideal": {"generators": [str(g) for g in jg[:REES_LISTING_LIMIT]], "count": len(jg)},
            "special_fiber": [str(g) for g in r.q.groebner()],
            "x_linear": {
                "generators": [str(g) for g in r.x_linear],
                "count": len(r.x_linear) + r.x_linear_dropped,
                "dropped_by_cap": r.x_linear_dropped,
                "y_degree_cap": r.y_degree_cap,
            },
            "jdrank": r.s,
            "analytic_spread": r.ell,
            "linear_type": r.linear_type,
        }

    def fibers_json(self) -> list | None:
        if self.fiber is None:
            return None
        F = self.spec.ring.field
        return [t.as_dict(F) for t in self.fiber.trials]

    def as_json(self) -> dict:
        return {
            "invariants": self.invariants_json(),
            "degree": self.degree_json(),
            "bounds": self.bounds_json(),
            "betti": None if self.betti is None else {
                "table": self.betti.as_json(),
                "regularity": self.betti.regularity if self.betti.betti else None,
                "truncated": self.betti.truncated,
            },
            "rees": self.rees_json(),
            "fibers": self.fibers_json(),
            "warnings": list(self.warnings),
            "version": __version__,
        }

    def render_text(self) -> str:
        return render_text(self.as_json(), self.betti)


def _fmt_bound(b: dict) -> str:
    rel = {"upper": "<=", "lower": ">=", "equality": "=="}[b["kind"]]
    val = "-" if b["value"] is None else b["value"]
    line = f"  {b['name']:<22} {b['subject']} {rel} {val}  [{b['verdict']}]"
    if b["reason"]:
        line += f"  {b['reason']}"
    return line


def render_text(doc: dict, betti: BettiTable | None = None) -> str:
    """Human-readable rendering of a JSON report (same verdicts by construction)."""
    inv = doc["invariants"]
    lines = [f"rmdeg {doc['version']}"]
    lines.append(f"map: ({', '.join(inv['forms'])}) on "
                 + ("P^%d" % inv["n"] if not inv["variety_ideal"] else f"V({', '.join(inv['variety_ideal'])})")
                 + f" over {'QQ' if inv['characteristic'] == 0 else 'GF(%d)' % inv['characteristic']}")
    keys = ["n", "m", "d", "t", "e_R", "codim_I", "syzygy_degrees", "jdrank", "analytic_spread",
            "linear_type", "birational"]
    lines.append("invariants:")
    for k in keys:
        if k in inv:
            lines.append(f"  {k:<16} {inv[k]}")
    deg = doc["degree"]
    if deg and "value" in deg:
        lines.append(f"degree: {deg['value']}  (distribution {deg['distribution']}, reg proxy {deg['reg_proxy']})")
        cc = deg.get("cross_check")
        if cc:
            lines.append(f"  graph-fiber multiplicity {cc['graph_fiber_multiplicity']} "
                         f"({'agrees' if cc['agrees'] else 'differs'})")
        c0 = deg.get("characteristic_0")
        if c0:
            lines.append(f"  characteristic 0 degree {c0['value']} "
                         f"({'agrees' if c0['agrees'] else 'differs' if c0['value'] is not None else c0['note']})")
        mc = deg.get("monomial_birationality")
        if mc:
            lines.append(f"  log-matrix minors gcd {mc['gcd']} vs d = {mc['d']}: "
                         f"{'birational' if mc['birational'] else 'not birational'}")
    bd = doc["bounds"]
    if bd:
        lines.append("bounds:")
        lines.extend(_fmt_bound(b) for b in bd["degree"])
        if bd["regularity"]:
            lines.append(_fmt_bound(bd["regularity"]))
        nc = bd["noether"]
        if nc:
            claim = f"product {nc['product']} >= {nc['target']}" if nc["product"] is not None else "-"
            lines.append(f"  {'noether':<22} {claim}  [{nc['verdict']}]  {nc['reason']}")
        s = bd["summary"]
        lines.append(f"  range: {s['max_lower']} <= degree <= {s['min_upper']}")
    if doc["betti"] is not None:
        lines.append("betti:")
        table = betti or BettiTable.from_json(doc["betti"]["table"])
        lines.extend("  " + row for row in table.staircase().splitlines())
    rees = doc["rees"]
    if rees:
        lines.append("rees:")
        lines.append(f"  symmetric ideal: {', '.join(rees['symmetric_ideal'])}")
        lines.append(f"  special fiber:   {', '.join(rees['special_fiber']) or '0'}")
        lines.append(f"  x-linear part:   {rees['x_linear']['count']} element(s)")
        lines.append(f"  jdrank {rees['jdrank']}, analytic spread {rees['analytic_spread']}, "
                     f"linear type {rees['linear_type']}")
    if doc["fibers"]:
        lines.append("fibers:")
        for i, t in enumerate(doc["fibers"]):
            lines.append(f"  #{i}: image {t['image']} dim {t['fiber_dim']} "
                         f"multiplicity {t['multiplicity']} regularity {t['regularity']}")
    for w in doc["warnings"]:
        lines.append(f"warning: {w}")
    return "\n".join(lines)


def _common_factor(spec: RationalMapSpec) -> int:
    best = 0
    for f, g in itertools.combinations(spec.forms, 2):
        best = max(best, common_factor_degree(f, g))
    return best


def compare_with_rationals(rep: DegreeReport, spec0: RationalMapSpec) -> dict | None:
    """Recompute the fiber degree over QQ for a report computed over GF(p).

    No reconciliation is attempted: a disagreement is recorded and warned about.
    """
    if rep.fiber is None or not rep.spec.ring.p or spec0.ring.p:
        return None
    opts = rep.options
    try:
        with _stage("characteristic-0", rep.timings):
            d0 = degree_via_general_fiber(spec0, opts.trials, opts.seed, opts.points).degree
    except SamplingError as exc:
        rep.char0_comparison = {"characteristic": 0, "value": None, "agrees": None, "note": str(exc)}
        return rep.char0_comparison
    agrees = d0 == rep.degree
    rep.char0_comparison = {"characteristic": 0, "value": d0, "agrees": agrees}
    if not agrees:
        rep.warnings.append(f"degree {rep.degree} in characteristic {rep.spec.ring.p} differs from "
                            f"degree {d0} in characteristic 0")
    return rep.char0_comparison


def assemble_report(spec: RationalMapSpec, options: Options | None = None,
                    stages=STAGES) -> DegreeReport:
    """Run the requested stages (default: everything) and judge every bound.

    Exceptions raised inside a stage carry its name in ``exc.stage``.
    """
    options = options or Options()
    stages = tuple(s for s in STAGES if s in set(stages))
    rep = DegreeReport(spec, options, stages)
    T = rep.timings
    if spec.ring.p:
        rep.warnings.append(f"computed in characteristic {spec.ring.p}: the fiber multiplicity "
                            "may include an inseparable degree")

    with _stage("invariants", T):
        rep.e_R = spec.coordinate_multiplicity()

    if "syzygies" in stages:
        with _stage("syzygies", T):
            rep.psi = presentation_matrix(spec)
            rep.syzygy_degrees = syzygy_degree_vector(rep.psi, spec.d)

    if "betti" in stages:
        with _stage("betti", T):
            rep.betti = minimal_free_resolution(spec.base_ideal)
            if spec.has_variety:
                rep.warnings.append("Betti table is of the base ideal over the polynomial ring, not over R")
            if rep.betti.truncated:
                rep.warnings.append("resolution truncated at the number of variables")

    if "rees" in stages:
        with _stage("rees", T):
            rep.rees = build_rees_data(spec, rep.psi, options.y_degree_cap)
            if rep.rees.x_linear_dropped:
                rep.warnings.append(f"{rep.rees.x_linear_dropped} x-linear element(s) above the y-degree cap "
                                    "omitted from the listing (still used for jdrank)")

    if "fiber" in stages:
        with _stage("fiber", T):
            rep.fiber = degree_via_general_fiber(spec, options.trials, options.seed, options.points)
            dist = rep.fiber.distribution
            if len(dist) > 1:
                rep.warnings.append(f"fiber multiplicities disagree across trials: {dist}")
            invalid = sum(not t.valid for t in rep.fiber.trials)
            if invalid:
                rep.warnings.append(f"{invalid} sampled fiber(s) had the wrong dimension and were ignored")

    if "bounds" in stages:
        with _stage("bounds", T):
            _judge_bounds(rep)

    return rep


def _judge_bounds(rep: DegreeReport):
    spec = rep.spec
    P = spec.P
    R_dim = P.dim()
    codim_I = R_dim - (P + spec.base_ideal).dim()
    Pgb = P.groebner() if spec.has_variety else []
    nondegenerate = not any(g.degree() == 1 for g in Pgb)
    ell = rep.rees.ell
    gf = ell == spec.t + 1
    delta = _common_factor(spec)
    reg = rep.fiber.regularity
    x_empty = rep.rees.x_linear_empty
    x_trunc = rep.rees.x_linear_dropped > 0
    ctx = BoundContext(
        n=spec.n, m=spec.m, d=spec.d, t=spec.t, e=rep.e_R, degrees=rep.syzygy_degrees,
        s=rep.rees.s, codim_I=codim_I, P_zero=not spec.has_variety, P_principal=len(Pgb) == 1,
        factorial=spec.factorial, nondegenerate=nondegenerate, generically_finite=gf, delta=delta,
        x_linear_empty=x_empty, x_linear_truncated=x_trunc, reg_proxy=reg,
    )
    if ctx.s <= ctx.t - 1:
        ctx.improved_side, ctx.improved_reason = improved_bound_side_condition(rep.rees, rep.psi, spec.d)
    rep.context = ctx
    if not gf:
        rep.warnings.append(f"analytic spread {ell} differs from dim R = {spec.t + 1}: map is not generically finite")
    rep.bounds = upper_bounds(ctx) + lower_bounds(ctx)
    for b in rep.bounds:
        b.judge(rep.degree)
    rep.regularity_check = regularity_bound_check(spec.n, ctx.degrees, reg, ctx.P_zero)
    if spec.m == spec.t:
        rep.noether = noether_obstruction(spec.forms, P if spec.has_variety else None)
    else:
        rep.noether = NoetherCheck(False, f"needs exactly dim X + 1 = {spec.t + 1} forms")
    if rep.noether.applicable and not rep.noether.holds:
        rep.warnings.append("Noether normalization obstruction violated: implementation error")

    valid = [t for t in rep.fiber.trials if t.valid and t.multiplicity == rep.degree]
    if valid:
        mult = graph_fiber_multiplicity(rep.rees.J, spec, valid[0].q)
        rep.cross_check = {
            "graph_fiber_multiplicity": mult,
            "point": [spec.ring.field.to_python(c) for c in valid[0].point],
            "agrees": mult == rep.degree,
        }
        if mult != rep.degree:
            rep.warnings.append(f"graph-fiber multiplicity {mult} differs from the fiber degree {rep.degree}")

    if all(f.is_monomial() for f in spec.forms) and not spec.has_variety and spec.m >= spec.n:
        chk = monomial_birationality_check(spec.forms)
        rep.monomial_check = {"gcd": chk.gcd, "d": chk.d, "birational": chk.birational}
        if chk.birational != (rep.degree == 1):
            rep.warnings.append("log-matrix birationality criterion disagrees with the computed degree")
    if rep.birational is not None and rep.birational != (rep.degree == 1):
        rep.warnings.append("jdrank birationality criterion disagrees with the computed degree")
    if rep.violated:
        rep.warnings.append("at least one bound is violated")
    if VIOLATED not in rep.all_verdicts() and HOLDS not in rep.all_verdicts():
        rep.warnings.append("no bound was applicable")
