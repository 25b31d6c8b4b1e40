"""Rees algebra presentation of a base ideal: symmetric ideal, Rees ideal,
special fiber, x-linear part, Jacobian dual rank and analytic spread."""

from __future__ import annotations

from dataclasses import dataclass

from .groebner import DEFAULT_BUDGET, Budget
from .ideal import Ideal
from .linalg import rank_mod_ideal
from .orders import bigraded
from .poly import Polynomial, PolyRing
from .resolution import GradedMatrix, syzygy_module


class MapSpecError(ValueError):
    """The forms do not define a valid rational map."""


class RationalMapSpec:
    """Forms f_0..f_m of a common degree d on X = Proj(k[x]/P)."""

    def __init__(self, ring: PolyRing, forms, variety_ideal=None,
                 budget: Budget = DEFAULT_BUDGET, factorial: bool = False):
        forms = tuple(forms)
        if not forms:
            raise MapSpecError("a rational map needs at least one form")
        for f in forms:
            if f.ring != ring:
                raise MapSpecError(f"form {f} is not in the declared ring")
            if f and not f.is_homogeneous():
                raise MapSpecError(f"form {f} is not homogeneous")
        nonzero = [f for f in forms if f]
        if not nonzero:
            raise MapSpecError("all forms are zero")
        degs = {f.degree() for f in nonzero}
        if len(degs) != 1:
            raise MapSpecError(f"forms have different degrees {sorted(degs)}")
        self.d = degs.pop()
        if self.d < 1:
            raise MapSpecError("forms must have positive degree")
        if variety_ideal is None:
            variety_ideal = Ideal(ring, [], budget)
        elif not isinstance(variety_ideal, Ideal):
            variety_ideal = Ideal(ring, list(variety_ideal), budget)
        if not variety_ideal.is_homogeneous():
            raise MapSpecError("the variety ideal must be homogeneous")
        self.ring = ring
        self.forms = forms
        self.P = variety_ideal
        self.budget = budget
        self.factorial = factorial
        self.n = ring.nvars - 1
        self.m = len(forms) - 1
        try:
            self.sat_index = next(i for i, f in enumerate(forms) if f and not self.P.contains(f))
        except StopIteration:
            raise MapSpecError("every form lies in the variety ideal") from None
        dimR = self.P.dim()
        if dimR < 1:
            raise MapSpecError("the variety ideal defines the empty set")
        self.t = dimR - 1

    @property
    def has_variety(self) -> bool:
        return not self.P.is_zero()

    @property
    def base_ideal(self) -> Ideal:
        return Ideal(self.ring, [f for f in self.forms if f], self.budget)

    def coordinate_multiplicity(self) -> int:
        """e(R) for R = k[x]/P."""
        return self.P.hilbert().multiplicity

    def over_field(self, field) -> "RationalMapSpec":
        ring = self.ring.with_field(field)
        return RationalMapSpec(ring, [f.change_ring(ring) for f in self.forms],
                               self.P.change_ring(ring), self.budget, self.factorial)

    def with_budget(self, budget: Budget) -> "RationalMapSpec":
        return RationalMapSpec(self.ring, self.forms, Ideal(self.ring, self.P.gens, budget),
                               budget, self.factorial)


def presentation_matrix(spec: RationalMapSpec) -> GradedMatrix:
    """psi: syzygies of f_0..f_m over k[x] (modulo P when P is nonzero)."""
    nz = [i for i, f in enumerate(spec.forms) if f]
    if len(nz) != len(spec.forms):
        raise MapSpecError("zero forms are not supported in the presentation")
    return syzygy_module(list(spec.forms), spec.P if spec.has_variety else None, spec.budget)


def _y_names(ring: PolyRing, m: int):
    for stem in ("y", "Y", "y_", "yy"):
        names = [f"{stem}{i}" for i in range(m + 1)]
        if not any(v in ring for v in names):
            return names
    raise MapSpecError("could not choose fresh names for the target variables")


def rees_ring(spec: RationalMapSpec) -> PolyRing:
    names = _y_names(spec.ring, spec.m)
    return spec.ring.extend(names, x_vars=spec.ring.variables)


def fiber_ring(S: PolyRing) -> PolyRing:
    return PolyRing(S.y_vars, S.field)


def symmetric_ideal(spec: RationalMapSpec, psi: GradedMatrix, S: PolyRing | None = None) -> Ideal:
    """L = I_1(y . psi): one (d_j, 1)-form per column of psi."""
    if psi.nrows != spec.m + 1:
        raise ValueError(f"psi has {psi.nrows} rows, expected {spec.m + 1}")
    S = S or rees_ring(spec)
    ys = [S.var(v) for v in S.y_vars]
    gens = []
    for col in psi.columns:
        acc = S.zero
        for yi, e in zip(ys, col):
            if e:
                acc = acc + yi * e.change_ring(S)
        gens.append(acc)
    return Ideal(S, gens, spec.budget)


def rees_ideal(spec: RationalMapSpec, L: Ideal) -> Ideal:
    """J = (L + P S) : f^infinity for the first form f not in P."""
    S = L.ring
    f = spec.forms[spec.sat_index].change_ring(S)
    gens = list(L.gens) + [g.change_ring(S) for g in spec.P.gens]
    return Ideal(S, gens, spec.budget).saturate(f)


def special_fiber_ideal(J: Ideal) -> Ideal:
    """q = J intersected with k[y], as an ideal of the fiber ring."""
    S = J.ring
    B = fiber_ring(S)
    return J.eliminate(S.x_vars).restrict(B)


def x_linear_part(J: Ideal, y_degree_cap: int | None = None):
    """x-degree-1 elements of the reduced basis of J under an x-degree-first order.

    Returns (kept, dropped): elements of y-degree above the cap are dropped
    from ``kept``. Since the full basis is known, ``dropped`` says exactly
    whether the cap truncated anything.
    """
    S = J.ring
    order = bigraded(S.nvars, S.x_indices)
    lin = [g for g in J.groebner(order) if g.x_degree() == 1]
    if y_degree_cap is None:
        return lin, []
    kept = [g for g in lin if g.degree() - 1 <= y_degree_cap]
    dropped = [g for g in lin if g.degree() - 1 > y_degree_cap]
    return kept, dropped


def coefficient_matrix(forms, S: PolyRing, B: PolyRing) -> list[list[Polynomial]]:
    """Rows: forms; columns: x-variables; entries: y-coefficients in B."""
    xi = S.x_indices
    yi = [S.index(v) for v in S.y_vars]
    rows = []
    for g in forms:
        row = [dict() for _ in xi]
        for m, c in g._terms.items():
            for col, i in enumerate(xi):
                if m[i]:
                    row[col][tuple(m[j] for j in yi)] = c
                    break
        rows.append([B.from_dict(r) for r in row])
    return rows


def jdrank(forms, q: Ideal, S: PolyRing) -> int:
    """Rank over Frac(B/q) of the x-coefficient matrix of the x-linear forms."""
    if not forms:
        return 0
    return rank_mod_ideal(coefficient_matrix(forms, S, q.ring), q)


def analytic_spread(q: Ideal) -> int:
    return q.dim()


@dataclass
class ReesData:
    S: PolyRing
    B: PolyRing
    psi: GradedMatrix
    L: Ideal
    J: Ideal
    q: Ideal
    x_linear: list
    x_linear_dropped: int
    y_degree_cap: int
    s: int
    ell: int

    LP: Ideal | None = None

    @property
    def linear_type(self) -> bool:
        """J = L + P S, i.e. the Rees algebra equals the symmetric algebra."""
        return self.J == (self.LP if self.LP is not None else self.L)

    @property
    def x_linear_empty(self) -> bool:
        return not self.x_linear and not self.x_linear_dropped


def build_rees_data(spec: RationalMapSpec, psi: GradedMatrix | None = None,
                    y_degree_cap: int | None = None) -> ReesData:
    psi = psi or presentation_matrix(spec)
    S = rees_ring(spec)
    B = fiber_ring(S)
    L = symmetric_ideal(spec, psi, S)
    J = rees_ideal(spec, L)
    q = special_fiber_ideal(J)
    cap = 2 * spec.m if y_degree_cap is None else y_degree_cap
    kept, dropped = x_linear_part(J, cap)
    # the rank uses every x-linear basis element; the cap only trims the listing
    s = jdrank(kept + dropped, q, S)
    LP = Ideal(S, list(L.gens) + [g.change_ring(S) for g in spec.P.gens], spec.budget)
    return ReesData(S, B, psi, L, J, q, kept, len(dropped), cap, s, analytic_spread(q), LP)
