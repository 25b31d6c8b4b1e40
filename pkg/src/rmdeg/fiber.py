"""Degree of a rational map from the multiplicity of a general fiber, and row ideals."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field

from .ideal import Ideal
from .poly import Polynomial, PolyRing, specialize
from .rees import RationalMapSpec
from .resolution import GradedMatrix, minimal_free_resolution

# Below this characteristic a random point is too likely to be special.
MIN_SAMPLING_PRIME = 101
MAX_POINT_TRIES = 200


class SamplingError(RuntimeError):
    """No usable sample point could be produced."""


class NotGenericallyFinite(SamplingError):
    """Every sampled fiber had the wrong dimension."""


@dataclass
class FiberData:
    point: tuple
    q: tuple
    Iq: Ideal
    a: Ideal
    fiber_dim: int
    multiplicity: int | None = None
    regularity: int | None = None

    @property
    def valid(self) -> bool:
        return self.fiber_dim == 1

    def as_dict(self, field_) -> dict:
        return {
            "point": [field_.to_python(c) for c in self.point],
            "image": [field_.to_python(c) for c in self.q],
            "fiber_dim": self.fiber_dim,
            "multiplicity": self.multiplicity,
            "regularity": self.regularity,
            "valid": self.valid,
        }


@dataclass
class DegreeResult:
    degree: int
    trials: list = field(default_factory=list)

    @property
    def distribution(self) -> dict:
        return dict(Counter(t.multiplicity for t in self.trials if t.valid))

    @property
    def regularity(self) -> int | None:
        regs = [t.regularity for t in self.trials if t.valid and t.multiplicity == self.degree]
        return modal(regs) if regs else None


def modal(values):
    """Most frequent value, ties broken by the minimum."""
    counts = Counter(values)
    top = max(counts.values())
    return min(v for v, c in counts.items() if c == top)


def _check_field(ring: PolyRing):
    if ring.p and ring.p < MIN_SAMPLING_PRIME:
        raise SamplingError(f"field of {ring.p} elements is too small to sample general points")


def _normalize(point, F):
    for c in point:
        if c:
            inv = F.inv(c)
            return tuple(F(x * inv) for x in point)
    return None


def _univariate_roots(coeffs, p: int):
    """All roots in F_p of a polynomial given by coefficients (low degree first)."""
    roots = []
    for t in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * t + c) % p
        if acc == 0:
            roots.append(t)
    return roots


def _hypersurface_point(spec: RationalMapSpec, rng: random.Random):
    """Random F_p-point of the hypersurface V(P) on a random line."""
    ring = spec.ring
    F = ring.field
    basis = spec.P.groebner()
    if len(basis) != 1:
        raise SamplingError("automatic sampling on X needs a hypersurface; supply points")
    g = basis[0]
    T = PolyRing(("t",), F)
    t = T.var("t")
    for _ in range(MAX_POINT_TRIES):
        a = [F.random_element(rng) for _ in range(ring.nvars)]
        b = [F.random_element(rng) for _ in range(ring.nvars)]
        line = {v: T.const(ai) + t.scale(bi) for v, ai, bi in zip(ring.variables, a, b)}
        h = specialize(g, line, T)
        if not h:
            continue
        coeffs = [0] * (h.degree() + 1)
        for m, c in h._terms.items():
            coeffs[m[0]] = int(c)
        roots = _univariate_roots(coeffs, ring.p)
        if roots:
            r = rng.choice(roots)
            pt = _normalize([F(ai + r * bi) for ai, bi in zip(a, b)], F)
            if pt is not None:
                return pt
    raise SamplingError("no F_p-point found on the hypersurface")


def sample_points(spec: RationalMapSpec, count: int, rng: random.Random, points=None):
    """``count`` points of X outside the base locus (user points are used as given)."""
    ring = spec.ring
    F = ring.field
    _check_field(ring)
    if points:
        out = []
        for pt in points:
            pt = tuple(F(c) for c in pt)
            if len(pt) != ring.nvars:
                raise SamplingError(f"point {pt} has the wrong number of coordinates")
            if any(g.evaluate(pt) for g in spec.P.gens):
                raise SamplingError(f"point {[F.to_python(c) for c in pt]} is not on X")
            if all(not f.evaluate(pt) for f in spec.forms):
                raise SamplingError("a supplied point lies in the base locus")
            out.append(pt)
        return out[:count]
    if spec.has_variety and not ring.p:
        raise SamplingError("sampling on a proper subvariety over QQ needs user-supplied points")
    out = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > MAX_POINT_TRIES * count:
            raise SamplingError("could not find points outside the base locus")
        if spec.has_variety:
            pt = _hypersurface_point(spec, rng)
        else:
            pt = _normalize([F.random_element(rng) for _ in range(ring.nvars)], F)
            if pt is None:
                continue
        if all(not f.evaluate(pt) for f in spec.forms):
            continue
        out.append(pt)
    return out


def specialized_koszul(spec: RationalMapSpec, q) -> Ideal:
    """I_q = (q_i f_j - q_j f_i) + P."""
    f = spec.forms
    gens = []
    for i in range(len(f)):
        for j in range(i + 1, len(f)):
            g = f[j].scale(q[i]) - f[i].scale(q[j])
            if g:
                gens.append(g)
    return Ideal(spec.ring, gens + list(spec.P.gens), spec.budget)


def fiber_ideal(spec: RationalMapSpec, q):
    """(I_q, a) with a = I_q : f_i^infinity for some q_i != 0.

    This equals I_q : I^infinity. A component of V(I_q) lies in V(f_i) only
    if it lies in V(I): off the base locus, f(x) is proportional to q and
    q_i != 0 forces f_i(x) != 0. So both saturations remove exactly the
    primary components supported on the base locus.
    """
    Iq = specialized_koszul(spec, q)
    i = next(k for k, c in enumerate(q) if c)
    return Iq, Iq.saturate(spec.forms[i])


def analyze_point(spec: RationalMapSpec, pt) -> FiberData:
    q = tuple(f.evaluate(pt) for f in spec.forms)
    Iq, a = fiber_ideal(spec, q)
    dim = a.dim()
    data = FiberData(pt, q, Iq, a, dim)
    if dim == 1:
        data.multiplicity = a.hilbert().multiplicity
        data.regularity = minimal_free_resolution(a).regularity
    return data


def degree_via_general_fiber(spec: RationalMapSpec, trials: int = 5, seed: int = 42,
                             points=None) -> DegreeResult:
    """Modal multiplicity e(R/a) over ``trials`` sampled fibers."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    pts = sample_points(spec, trials, rng, points)
    data = [analyze_point(spec, pt) for pt in pts]
    good = [t.multiplicity for t in data if t.valid]
    if not good:
        dims = sorted({t.fiber_dim for t in data})
        raise NotGenericallyFinite(f"no sampled fiber is finite (fiber dimensions {dims})")
    return DegreeResult(modal(good), data)


def graph_fiber_multiplicity(J: Ideal, spec: RationalMapSpec, q) -> int | None:
    """Multiplicity of the graph fiber: J at y = q, saturated off the base locus.

    An independent route to the degree through the Rees ideal; returns None
    when the fiber is not one-dimensional.
    """
    S = J.ring
    R = spec.ring
    assignment = {y: c for y, c in zip(S.y_vars, q)}
    gens = [specialize(g, assignment, R) for g in J.gens]
    gens = [g for g in gens if g] + list(spec.P.gens)
    i = next(k for k, c in enumerate(q) if c)
    fib = Ideal(R, gens, spec.budget).saturate(spec.forms[i])
    if fib.dim() != 1:
        return None
    return fib.hilbert().multiplicity


# --- row ideals --------------------------------------------------------------


def row_ideal(psi: GradedMatrix, q, P: Ideal | None = None) -> Ideal:
    """I_1(q . psi), plus P when given."""
    if all(not c for c in q):
        raise ValueError("row vector is zero")
    gens = [g for g in psi.row_times(q) if g]
    if P is not None:
        gens += list(P.gens)
    return Ideal(psi.ring, gens)


@dataclass
class RowIdentityEvidence:
    trials: int
    failures: list

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_row_ideal_identity(spec: RationalMapSpec, psi: GradedMatrix, trials: int = 50,
                              seed: int = 7) -> RowIdentityEvidence:
    """Check I_1(q . psi) = I_q : I for random q with q_0 != 0."""
    rng = random.Random(seed)
    F = spec.ring.field
    I = spec.base_ideal
    failures = []
    for _ in range(trials):
        q = [F.random_element(rng, nonzero=True)] + [F.random_element(rng) for _ in spec.forms[1:]]
        lhs = row_ideal(psi, q, spec.P if spec.has_variety else None)
        rhs = specialized_koszul(spec, q).colon(I)
        if not (lhs.issubset(rhs) and rhs.issubset(lhs)):
            failures.append([F.to_python(c) for c in q])
    return RowIdentityEvidence(trials, failures)
