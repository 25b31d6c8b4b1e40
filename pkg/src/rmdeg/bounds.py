"""Upper and lower bounds for the degree of a rational map, with verdicts."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import prod

from .ideal import Ideal
from .linalg import rank_mod_ideal
from .resolution import syzygy_module

HOLDS = "holds"
VIOLATED = "violated"
NOT_APPLICABLE = "not-applicable"


@dataclass
class Bound:
    name: str
    kind: str  # upper | lower | equality
    value: int | None
    applicable: bool
    reason: str = ""
    subject: str = "degree"  # the invariant the bound constrains
    verdict: str = NOT_APPLICABLE

    def judge(self, actual: int | None) -> str:
        if not self.applicable or self.value is None or actual is None:
            self.verdict = NOT_APPLICABLE
        elif self.kind == "upper":
            self.verdict = HOLDS if self.value >= actual else VIOLATED
        elif self.kind == "lower":
            self.verdict = HOLDS if self.value <= actual else VIOLATED
        else:
            self.verdict = HOLDS if self.value == actual else VIOLATED
        return self.verdict

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class BoundContext:
    """Invariants feeding the bound formulas; ``degrees`` is d_1 >= ... >= d_r."""

    n: int
    m: int
    d: int
    t: int
    e: int
    degrees: tuple
    s: int
    codim_I: int
    P_zero: bool = True
    P_principal: bool = False
    factorial: bool = False
    nondegenerate: bool = True
    generically_finite: bool = True
    delta: int = 0
    improved_side: bool | None = None
    improved_reason: str = ""
    x_linear_empty: bool = False
    x_linear_truncated: bool = False
    reg_proxy: int | None = None

    @property
    def cohen_macaulay(self) -> bool:
        return self.P_zero or self.P_principal

    @property
    def grade_two(self) -> bool:
        return self.cohen_macaulay and self.codim_I >= 2

    @property
    def r(self) -> int:
        return len(self.degrees)


def _head(ctx: BoundContext, k: int) -> int:
    return prod(ctx.degrees[:max(k, 0)])


def _standing(ctx: BoundContext) -> str:
    """Reason the standing hypotheses fail, or ''."""
    if not ctx.generically_finite:
        return "map is not generically finite"
    if not ctx.nondegenerate:
        return "X is degenerate (P contains a linear form)"
    if ctx.t < 1:
        return "dim X must be at least 1"
    if ctx.r < ctx.t:
        return f"fewer syzygy degrees ({ctx.r}) than dim X ({ctx.t})"
    return ""


def upper_bounds(ctx: BoundContext) -> list[Bound]:
    t, e, dg, s = ctx.t, ctx.e, ctx.degrees, ctx.s
    base = _standing(ctx)
    out = []

    def add(name, kind, value, ok, reason):
        if base:
            ok, reason = False, base
        out.append(Bound(name, kind, value, ok, reason))

    main = _head(ctx, t - 1) * dg[-1] * e if not base else None
    add("syzygy-product", "upper", main, True,
        "syzygy degrees of the symmetric ideal; the Rees ideal is a minimal prime of it")

    if ctx.grade_two:
        add("syzygy-rank", "upper", main, True, "grade(I) >= 2, full presentation module")
        add("koszul-rank", "upper", ctx.d ** t * e, True, "grade(I) >= 2, Koszul relations as rank-m submodule")
    else:
        why = "grade(I) >= 2 not verified" if not ctx.cohen_macaulay else f"codim(I) = {ctx.codim_I} < 2"
        add("syzygy-rank", "upper", main, False, why)
        add("koszul-rank", "upper", ctx.d ** t * e, False, why)

    if t < 2:
        add("factorial-refinement", "upper", None, False, "needs dim X >= 2")
    elif not (ctx.P_zero or ctx.factorial):
        add("factorial-refinement", "upper", None, False, "factoriality of R not declared")
    else:
        val = _head(ctx, t - 2) * dg[-2] * dg[-1] * e if ctx.r >= 2 else None
        add("factorial-refinement", "upper", val, val is not None, "R factorial, dim X >= 2")

    if base:
        lin = None
    elif s <= t - 1:
        lin = _head(ctx, t - s) * e
    else:
        lin = e
    add("linear-rank", "upper", lin, True, f"s = {s}")

    if s > t - 1:
        add("linear-rank-improved", "upper", None, False, "needs s <= dim X - 1")
    else:
        val = _head(ctx, t - s - 1) * dg[-1] * e if not base else None
        if ctx.improved_side is None:
            add("linear-rank-improved", "upper", val, False, ctx.improved_reason or "side condition not checked")
        elif ctx.improved_side:
            add("linear-rank-improved", "upper", val, True, ctx.improved_reason)
        else:
            add("linear-rank-improved", "upper", val, False, ctx.improved_reason)

    if t != 2:
        add("surface-source", "upper", None, False, "needs dim X = 2")
    elif s >= 2:
        add("surface-source", "equality", 1, True, "s >= 2 forces birationality")
    elif s == 1:
        add("surface-source", "upper", dg[0] * e if not base else None, True, "s = 1")
    else:
        add("surface-source", "upper", dg[0] * dg[-1] * e if not base else None, True, "s = 0")

    if ctx.delta <= 0:
        add("common-factor", "upper", None, False, "no two forms share a common factor")
    else:
        val = (ctx.d - ctx.delta) * ctx.d ** (ctx.m - 1) * e
        add("common-factor", "upper", val, ctx.grade_two,
            f"common factor of degree {ctx.delta}" if ctx.grade_two else "grade(I) >= 2 not verified")

    ci = ctx.cohen_macaulay and ctx.t == ctx.m and ctx.codim_I == ctx.m + 1
    add("complete-intersection", "equality", e * ctx.d ** ctx.m, ci,
        "forms are a regular sequence with dim R = m + 1" if ci else "forms are not a maximal regular sequence")
    return out


def lower_bounds(ctx: BoundContext) -> list[Bound]:
    base = _standing(ctx)
    n, s = ctx.n, ctx.s
    out = []
    out.append(Bound("jdrank-defect", "lower", n + 1 - s, not base, base or "n + 1 - s"))
    if base:
        out.append(Bound("jdrank-regularity", "lower", None, False, base))
    elif not ctx.P_zero:
        out.append(Bound("jdrank-regularity", "lower", None, False,
                         "regularity is only computed for X = P^n"))
    elif ctx.reg_proxy is None:
        out.append(Bound("jdrank-regularity", "lower", None, False, "no fiber regularity available"))
    else:
        out.append(Bound("jdrank-regularity", "lower", n + 1 - s + ctx.reg_proxy - 2, True,
                         "specialization proxy for the generic fiber regularity"))
    if base:
        out.append(Bound("no-linear-part", "lower", n + 1, False, base))
    elif ctx.x_linear_truncated:
        out.append(Bound("no-linear-part", "lower", n + 1, False, "x-linear part truncated by the y-degree cap"))
    elif not ctx.x_linear_empty:
        out.append(Bound("no-linear-part", "lower", n + 1, False, "the Rees ideal has x-linear elements"))
    else:
        out.append(Bound("no-linear-part", "lower", n + 1, True, "the Rees ideal has no x-linear elements"))
    return out


def regularity_bound_check(n: int, degrees, reg: int | None, P_zero: bool = True) -> Bound:
    """reg <= d_1 + ... + d_{n-2} + d_{r-1} + d_r - n + 1 for X = P^n, n >= 2."""
    dg = tuple(degrees)
    if not P_zero:
        b = Bound("fiber-regularity", "upper", None, False, "needs X = P^n", subject="regularity")
    elif n < 2:
        b = Bound("fiber-regularity", "upper", None, False, "needs n >= 2", subject="regularity")
    elif len(dg) < max(2, n):
        b = Bound("fiber-regularity", "upper", None, False, "too few syzygy degrees", subject="regularity")
    else:
        val = sum(dg[:n - 2]) + dg[-2] + dg[-1] - n + 1
        b = Bound("fiber-regularity", "upper", val, True, "X = P^n", subject="regularity")
    b.judge(reg)
    return b


@dataclass
class NoetherCheck:
    applicable: bool
    reason: str
    column_degrees: tuple = ()
    product: int | None = None
    target: int | None = None

    @property
    def holds(self) -> bool | None:
        if not self.applicable:
            return None
        return self.product >= self.target

    @property
    def verdict(self) -> str:
        if not self.applicable:
            return NOT_APPLICABLE
        return HOLDS if self.holds else VIOLATED


def noether_obstruction(forms, P: Ideal | None = None) -> NoetherCheck:
    """For f_0..f_t over which R is integral: product of t syzygy degrees >= d^t.

    Columns of the presentation are taken by increasing degree until the
    chosen submatrix has rank t, so the product checked is the smallest one
    a greedy maximal-rank choice produces.
    """
    forms = list(forms)
    ring = forms[0].ring
    P = P if P is not None else Ideal(ring, [])
    t = len(forms) - 1
    if t < 1:
        return NoetherCheck(False, "needs at least two forms")
    if P.dim() != t + 1:
        return NoetherCheck(False, f"dim R = {P.dim()} is not t + 1 = {t + 1}")
    if not (P.is_zero() or len(P.groebner()) == 1):
        return NoetherCheck(False, "grade condition needs R Cohen-Macaulay")
    if (P + Ideal(ring, forms)).dim() != 0:
        return NoetherCheck(False, "integrality certificate failed: the forms do not cut out the irrelevant ideal")
    d = forms[0].degree()
    psi = syzygy_module(forms, None if P.is_zero() else P)
    order = sorted(range(psi.ncols), key=lambda j: (psi.col_degrees[j], j))
    chosen: list[int] = []
    rank = 0
    q = None if P.is_zero() else P
    for j in order:
        trial = chosen + [j]
        rows = [[psi.columns[c][i] for c in trial] for i in range(psi.nrows)]
        rk = rank_mod_ideal(rows, q)
        if rk > rank:
            chosen, rank = trial, rk
        if rank == t:
            break
    if rank < t:
        return NoetherCheck(False, f"syzygy matrix has rank {rank} < {t}")
    degs = tuple(sorted((psi.col_degrees[j] - d for j in chosen), reverse=True))
    return NoetherCheck(True, "forms generate an ideal primary to the irrelevant ideal",
                        degs, prod(degs), d ** t)
