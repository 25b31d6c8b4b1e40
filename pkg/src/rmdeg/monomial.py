"""Combinatorics of monomial ideals and monomial maps: minimal primes, delta-degree,
Bezout-type inequalities and the log-matrix birationality criterion."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod

from .ideal import Ideal
from .linalg import gcd_maximal_minors


class NotMonomialError(ValueError):
    pass


def _supports(Z: Ideal):
    if not Z.is_monomial():
        raise NotMonomialError("expected a monomial ideal")
    return [frozenset(i for i, e in enumerate(next(iter(g._terms))) if e) for g in Z.gens]


def minimal_primes(Z: Ideal) -> list[frozenset]:
    """Minimal primes of a monomial ideal as sets of variable indices.

    These are the minimal vertex covers of the generator supports. The unit
    ideal has none; the zero ideal has the single prime (0).
    """
    sup = _supports(Z)
    if any(not s for s in sup):
        return []
    n = Z.ring.nvars
    covers = []
    for size in range(n + 1):
        for C in itertools.combinations(range(n), size):
            C = frozenset(C)
            if all(C & s for s in sup) and not any(c <= C for c in covers):
                covers.append(C)
    return covers


def projective_components(Z: Ideal) -> list[frozenset]:
    """Minimal primes other than the irrelevant ideal (coordinate subspaces of P^n)."""
    n = Z.ring.nvars
    return [C for C in minimal_primes(Z) if len(C) < n]


def delta_degree(Z: Ideal) -> int:
    """Sum of the degrees of the irreducible components of V(Z) in P^n.

    Every component of a monomial scheme is a coordinate subspace of degree 1.
    """
    return len(projective_components(Z))


@dataclass
class InequalityCheck:
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs


def intersection_delta_check(Z: Ideal, hypersurfaces) -> InequalityCheck:
    """delta(Z cap H_1 cap ... cap H_t) <= delta(Z) * prod delta(H_i) for monomial data."""
    ring = Z.ring
    hs = [h if isinstance(h, Ideal) else Ideal(ring, [h]) for h in hypersurfaces]
    total = Ideal(ring, list(Z.gens) + [g for h in hs for g in h.gens])
    return InequalityCheck(delta_degree(total), delta_degree(Z) * prod(delta_degree(h) for h in hs))


def component_degree_check(T: Ideal, p: int) -> InequalityCheck:
    """Sum of degrees of components of V(T) of codim <= p against d_1...d_{p-1} d_r (X = P^n)."""
    degs = sorted((g.degree() for g in T.minimal_generators()), reverse=True)
    if not 1 <= p <= len(degs):
        raise ValueError(f"p must lie in 1..{len(degs)}")
    lhs = sum(1 for C in projective_components(T) if len(C) <= p)
    return InequalityCheck(lhs, prod(degs[:p - 1]) * degs[-1])


def log_matrix(forms) -> list[list[int]]:
    """Exponent vectors of monomial forms, one row per form."""
    rows = []
    for f in forms:
        if not f.is_monomial():
            raise NotMonomialError(f"{f} is not a monomial")
        rows.append(list(next(iter(f._terms))))
    return rows


@dataclass
class BirationalityCheck:
    gcd: int
    d: int

    @property
    def birational(self) -> bool:
        return self.gcd == self.d


def monomial_birationality_check(forms) -> BirationalityCheck:
    """Birational iff the gcd of the maximal minors of the log matrix is d."""
    M = log_matrix(forms)
    d = sum(M[0])
    if any(sum(r) != d for r in M):
        raise ValueError("monomials of different degrees")
    return BirationalityCheck(abs(gcd_maximal_minors(M)), d)


def common_monomial_factor_degree(forms) -> int:
    """Largest degree of the monomial gcd over pairs of forms."""
    best = 0
    cm = [f.content_monomial() for f in forms if f]
    for a, b in itertools.combinations(cm, 2):
        best = max(best, sum(min(x, y) for x, y in zip(a, b)))
    return best
