"""Ideals with cached reduced Groebner bases and the operations built on them."""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from functools import lru_cache

from . import groebner as gb
from .groebner import DEFAULT_BUDGET, Budget
from .orders import MonomialOrder, elimination, grevlex, weighted_grevlex
from .poly import Polynomial, PolyRing, RingMismatch


class UnitIdealError(ValueError):
    """The ideal is the whole ring: the scheme it defines is empty."""


class NonHomogeneousError(ValueError):
    pass


def _append_zero(d: dict, k: int = 1) -> dict:
    z = (0,) * k
    return {m + z: c for m, c in d.items()}


class Ideal:
    """Ideal of a PolyRing given by generators.

    Reduced Groebner bases are memoized per monomial order. A basis is unique
    for its order, so concurrent fills of the same entry agree and the last
    writer may win.
    """

    def __init__(self, ring: PolyRing, gens=(), budget: Budget = DEFAULT_BUDGET):
        gens = list(gens)
        for g in gens:
            if g.ring != ring:
                raise RingMismatch(f"generator {g} not in {ring!r}")
        self.ring = ring
        self.gens = tuple(g for g in gens if g)
        self.budget = budget
        self._cache: dict[MonomialOrder, list] = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.gens) or '0'})"

    def _new(self, gens, ring=None):
        return Ideal(ring or self.ring, gens, self.budget)

    # Groebner bases -----------------------------------------------------

    def _gb(self, order: MonomialOrder | None = None) -> list:
        order = order or self.ring.order
        hit = self._cache.get(order)
        if hit is not None:
            return hit
        basis = gb.groebner_basis([g._terms for g in self.gens], self.ring.p,
                                  order.key_function(), budget=self.budget)
        with self._lock:
            self._cache[order] = basis
        return basis

    def groebner(self, order: MonomialOrder | None = None) -> list[Polynomial]:
        return [Polynomial(self.ring, d) for d in self._gb(order)]

    def normal_form(self, f: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
        if f.ring != self.ring:
            raise RingMismatch("polynomial and ideal live in different rings")
        order = order or self.ring.order
        rem = gb.normal_form(f._terms, self._gb(order), order.key_function(), self.ring.p)
        return Polynomial(self.ring, rem)

    def contains(self, f: Polynomial) -> bool:
        return not self.normal_form(f)

    __contains__ = contains

    def issubset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.gens)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self._gb() == other._gb()

    def __hash__(self):
        return hash((self.ring, tuple(frozenset(d.items()) for d in self._gb())))

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        basis = self._gb()
        return len(basis) == 1 and not any(next(iter(basis[0])))

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.gens)

    def leading_monomials(self, order: MonomialOrder | None = None):
        order = order or self.ring.order
        return gb.leading_monomials(self._gb(order), order.key_function())

    # ideal arithmetic ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Polynomial):
            return self._new(self.gens + (other,))
        if other.ring != self.ring:
            raise RingMismatch("sum of ideals from different rings")
        return self._new(self.gens + other.gens)

    def __mul__(self, other: "Ideal"):
        return self._new([a * b for a in self.gens for b in other.gens])

    def change_ring(self, ring: PolyRing) -> "Ideal":
        return Ideal(ring, [g.change_ring(ring) for g in self.gens], self.budget)

    # elimination --------------------------------------------------------

    def eliminate(self, drop_vars) -> "Ideal":
        """I intersected with the subring in the remaining variables.

        The returned ideal still lives in ``self.ring``; its generators (the
        drop-free part of an elimination Groebner basis) involve none of
        ``drop_vars``.
        """
        idx = sorted(self.ring.index(v) for v in drop_vars)
        if not idx:
            return self
        order = elimination(self.ring.nvars, idx)
        keep = [d for d in self._gb(order) if all(not any(m[i] for i in idx) for m in d)]
        return self._new([Polynomial(self.ring, d) for d in keep])

    def restrict(self, subring: PolyRing) -> "Ideal":
        """Move generators that only use ``subring`` variables into ``subring``."""
        return Ideal(subring, [g.change_ring(subring) for g in self.gens], self.budget)

    def _eliminate_new_var(self, polys, p) -> list[dict]:
        """Eliminate a variable appended as the last coordinate of ``polys``."""
        n = self.ring.nvars
        order = elimination(n + 1, [n])
        basis = gb.groebner_basis(polys, p, order.key_function(), budget=self.budget)
        return [{m[:-1]: c for m, c in d.items()} for d in basis if all(m[-1] == 0 for m in d)]

    def intersect(self, other: "Ideal") -> "Ideal":
        """I intersected with J via t*I + (1 - t)*J, eliminating t."""
        if other.ring != self.ring:
            raise RingMismatch("intersection of ideals from different rings")
        if self.is_zero() or other.is_zero():
            return self._new([])
        p = self.ring.p
        polys = [{m + (1,): c for m, c in g._terms.items()} for g in self.gens]
        for g in other.gens:
            out = _append_zero(g._terms)
            for m, c in g._terms.items():
                out[m + (1,)] = (-c) % p if p else -c
            polys.append(out)
        return self._new([Polynomial(self.ring, d) for d in self._eliminate_new_var(polys, p)])

    # quotients and saturation -------------------------------------------

    def _revlex_extension(self, f: Polynomial):
        """Generators of I + (v - f) in k[x, v] with v last and weighted by deg f."""
        n = self.ring.nvars
        d = f.degree()
        p = self.ring.p
        polys = [_append_zero(g._terms) for g in self.gens]
        vf = {(0,) * n + (1,): self.ring.field.one}
        for m, c in f._terms.items():
            vf[m + (0,)] = (-c) % p if p else -c
        polys.append(vf)
        order = weighted_grevlex((1,) * n + (d,))
        basis = gb.groebner_basis(polys, p, order.key_function(),
                                  degree=lambda e: sum(e[:-1]) + d * e[-1],
                                  budget=self.budget)
        return basis, d

    def _substitute_back(self, basis, f: Polynomial, divide_all: bool) -> list[Polynomial]:
        """Divide each element by v (or its top power) and substitute v -> f."""
        from .poly import specialize

        vname = self.ring.fresh_name("v_")
        ext = self.ring.extend((vname,))
        out = []
        for d in basis:
            low = min(m[-1] for m in d)
            k = low if divide_all else min(low, 1)
            dd = {m[:-1] + (m[-1] - k,): c for m, c in d.items()}
            poly = Polynomial(ext, dd)
            out.append(specialize(poly, {vname: f}, self.ring))
        return [g for g in out if g]

    def quotient(self, f: Polynomial) -> "Ideal":
        """I : (f) = {g : g f in I}."""
        if f.ring != self.ring:
            raise RingMismatch("quotient by a polynomial from another ring")
        if not f:
            raise ValueError("ideal quotient by the zero polynomial")
        if f.is_constant():
            return self
        if self.is_zero():
            return self
        if self.is_homogeneous() and f.is_homogeneous():
            basis, _ = self._revlex_extension(f)
            return self._new(self._substitute_back(basis, f, divide_all=False))
        # (I intersect (f)) / f
        inter = self.intersect(self._new([f]))
        return self._new([exact_divide(g, f) for g in inter.gens])

    def colon(self, other: "Ideal") -> "Ideal":
        """I : J = intersection of I : g over the generators g of J."""
        if isinstance(other, Polynomial):
            return self.quotient(other)
        if other.is_zero():
            return self._new([self.ring.one])
        result = None
        for g in other.gens:
            q = self.quotient(g)
            result = q if result is None else result.intersect(q)
        return result

    def saturate_element(self, f: Polynomial) -> "Ideal":
        """I : f^infinity."""
        if not f:
            raise ValueError("saturation by the zero polynomial")
        if f.is_constant() or self.is_zero():
            return self
        if self.is_homogeneous() and f.is_homogeneous():
            basis, _ = self._revlex_extension(f)
            return self._new(self._substitute_back(basis, f, divide_all=True))
        p = self.ring.p
        n = self.ring.nvars
        polys = [_append_zero(g._terms) for g in self.gens]
        wf = {m + (1,): c for m, c in f._terms.items()}
        one = (0,) * (n + 1)
        wf[one] = wf.get(one, 0) - 1
        if p:
            wf[one] %= p
        polys.append({m: c for m, c in wf.items() if c})
        return self._new([Polynomial(self.ring, d) for d in self._eliminate_new_var(polys, p)])

    def saturate(self, other) -> "Ideal":
        """I : J^infinity, the intersection of I : g^infinity over generators g of J."""
        if isinstance(other, Polynomial):
            return self.saturate_element(other)
        if other.is_zero():
            raise ValueError("saturation by the zero ideal")
        result = None
        for g in other.gens:
            s = self.saturate_element(g)
            result = s if result is None else result.intersect(s)
        return result

    # dimension and Hilbert series ----------------------------------------

    def dim(self) -> int:
        """Krull dimension of R/I, or -1 for the unit ideal."""
        if self.is_zero():
            return self.ring.nvars
        lms = self.leading_monomials(grevlex(self.ring.nvars))
        if any(not any(m) for m in lms):
            return -1
        return max_independent_set_size([tuple(i for i, e in enumerate(m) if e) for m in lms],
                                        self.ring.nvars)

    def codim(self) -> int:
        d = self.dim()
        return self.ring.nvars - d if d >= 0 else self.ring.nvars + 1

    def hilbert(self) -> "HilbertData":
        if not self.is_homogeneous():
            raise NonHomogeneousError("Hilbert series needs a homogeneous ideal")
        lms = self.leading_monomials(grevlex(self.ring.nvars))
        return hilbert_from_monomials(lms, self.ring.nvars)

    def minimal_generators(self) -> list[Polynomial]:
        """A minimal homogeneous generating set (input order kept within a degree)."""
        if not self.is_homogeneous():
            raise NonHomogeneousError("minimal generators need a homogeneous ideal")
        from .resolution import minimal_generators

        return minimal_generators(list(self.gens), self.budget)


def exact_divide(g: Polynomial, f: Polynomial) -> Polynomial:
    """g / f, raising if the division is not exact."""
    ring = g.ring
    key = ring._key
    p = ring.p
    lmf = max(f._terms, key=key)
    inv = ring.field.inv(f._terms[lmf])
    rest = dict(g._terms)
    q = {}
    while rest:
        m = max(rest, key=key)
        if any(a < b for a, b in zip(m, lmf)):
            raise ValueError(f"{f} does not divide {g}")
        mult = tuple(a - b for a, b in zip(m, lmf))
        c = rest[m] * inv
        if p:
            c %= p
        q[mult] = c
        for fm, fc in f._terms.items():
            mm = tuple(a + b for a, b in zip(fm, mult))
            v = rest.get(mm, 0) - c * fc
            if p:
                v %= p
            if v:
                rest[mm] = v
            else:
                rest.pop(mm, None)
    return Polynomial(ring, q)


def max_independent_set_size(supports, n: int) -> int:
    """Largest U subset of range(n) containing no support set."""
    supports = [frozenset(s) for s in supports]
    for size in range(n, -1, -1):
        for U in itertools.combinations(range(n), size):
            U = frozenset(U)
            if not any(s <= U for s in supports):
                return size
    return -1


# --- Hilbert series of monomial ideals -------------------------------------


@dataclass(frozen=True)
class HilbertData:
    """Hilbert series N(T)/(1-T)^nvars of R/I with dimension and multiplicity."""

    numerator: tuple
    nvars: int
    dimension: int
    multiplicity: int
    h_polynomial: tuple

    def hilbert_function(self, k: int) -> int:
        """dim_k (R/I)_k from the h-polynomial over (1-T)^dimension."""
        from math import comb

        dim = self.dimension
        total = 0
        for i, h in enumerate(self.h_polynomial):
            j = k - i
            if j < 0:
                continue
            total += h * (comb(j + dim - 1, dim - 1) if dim > 0 else (1 if j == 0 else 0))
        return total

    def as_dict(self):
        return {
            "numerator": list(self.numerator),
            "dimension": self.dimension,
            "multiplicity": self.multiplicity,
        }


def _minimalize(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return tuple(sorted(out))


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a, b, sign=1):
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] += sign * y
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


@lru_cache(maxsize=65536)
def _numerator(gens: tuple) -> tuple:
    """Numerator N(T) of the Hilbert series of k[x]/(gens), gens minimal monomials."""
    if not gens:
        return (1,)
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    coprime = all(not (supports[i] & supports[j])
                  for i in range(len(gens)) for j in range(i + 1, len(gens)))
    if coprime:
        out = [1]
        for g in gens:
            d = sum(g)
            out = _poly_mul(out, [1] + [0] * (d - 1) + [-1])
        return tuple(out)
    # pivot on the most frequent variable at its smallest positive exponent
    n = len(gens[0])
    counts = [sum(1 for g in gens if g[i]) for i in range(n)]
    var = max(range(n), key=lambda i: counts[i])
    e = min(g[var] for g in gens if g[var])
    pivot = tuple(e if i == var else 0 for i in range(n))
    with_pivot = _minimalize(gens + (pivot,))
    colon = _minimalize(tuple(tuple(max(a - b, 0) for a, b in zip(g, pivot)) for g in gens))
    left = list(_numerator(with_pivot))
    right = [0] * e + list(_numerator(colon))
    return tuple(_poly_add(left, right))


def hilbert_from_monomials(monomials, nvars: int) -> HilbertData:
    gens = _minimalize(tuple(tuple(m) for m in monomials))
    if any(not any(g) for g in gens):
        raise UnitIdealError("Hilbert series of the unit ideal")
    num = list(_numerator(gens)) if gens else [1]
    # divide by (1 - T) while T = 1 is a root
    h = num[:]
    c = 0
    while sum(h) == 0:
        # synthetic division by (1 - T): h = (1 - T) q  =>  q_k = sum_{i<=k} h_i
        q = []
        acc = 0
        for x in h[:-1]:
            acc += x
            q.append(acc)
        h = q
        c += 1
    while len(h) > 1 and h[-1] == 0:
        h.pop()
    dim = nvars - c
    return HilbertData(tuple(num), nvars, dim, sum(h), tuple(h))


# --- functional API ---------------------------------------------------------


def reduced_groebner(I: Ideal, order: MonomialOrder | None = None) -> list[Polynomial]:
    return I.groebner(order)


def normal_form(f: Polynomial, I: Ideal, order: MonomialOrder | None = None) -> Polynomial:
    return I.normal_form(f, order)


def ideal_quotient(I: Ideal, f: Polynomial) -> Ideal:
    return I.quotient(f)


def saturate(I: Ideal, J) -> Ideal:
    return I.saturate(J)


def eliminate(I: Ideal, drop_vars) -> Ideal:
    return I.eliminate(drop_vars)


def krull_dimension(I: Ideal) -> int:
    d = I.dim()
    if d < 0:
        raise UnitIdealError("the unit ideal defines the empty scheme")
    return d


def hilbert_data(I: Ideal) -> HilbertData:
    return I.hilbert()
