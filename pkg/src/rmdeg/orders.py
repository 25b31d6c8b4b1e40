"""Monomial orders as sort keys on exponent tuples.

Every order is a ``MonomialOrder`` whose ``key(exp)`` returns a tuple; a larger
key means a larger monomial. Orders are built from optional integer weight rows
refined by graded reverse lexicographic or lexicographic comparison, which
covers grevlex, lex, elimination orders and the x-degree-first order used on
bigraded rings.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class MonomialOrder:
    kind: str
    nvars: int
    weights: tuple = ()
    # "revlex" tail: compare (weighted) degree then reverse lex; "lex" tail: pure lex
    tail: str = "revlex"
    degree_weights: tuple | None = None

    def key(self, exp):
        rows = tuple(sum(w * e for w, e in zip(row, exp)) for row in self.weights)
        if self.tail == "lex":
            return rows + tuple(exp)
        if self.degree_weights is None:
            deg = sum(exp)
        else:
            deg = sum(w * e for w, e in zip(self.degree_weights, exp))
        return rows + (deg,) + tuple(-e for e in reversed(exp))

    def key_function(self):
        """Fast specialized key callable for the engine."""
        n = self.nvars
        rng = range(n - 1, -1, -1)
        if not self.weights and self.tail == "revlex" and self.degree_weights is None:
            def key(exp):
                return (sum(exp),) + tuple([-exp[i] for i in rng])
            return key
        if not self.weights and self.tail == "lex":
            return tuple
        return self.key

    def __str__(self):
        return self.kind


def grevlex(n: int) -> MonomialOrder:
    return MonomialOrder("grevlex", n)


def lex(n: int) -> MonomialOrder:
    return MonomialOrder("lex", n, tail="lex")


def elimination(n: int, indices) -> MonomialOrder:
    """Order eliminating the variables at ``indices``.

    Any monomial involving an eliminated variable beats every monomial free of
    them; ties are broken by grevlex. ``indices`` may be an int k meaning the
    first k variables (a prefix block).
    """
    if isinstance(indices, int):
        indices = range(indices)
    idx = frozenset(indices)
    row = tuple(1 if i in idx else 0 for i in range(n))
    return MonomialOrder(f"elim{sorted(idx)}", n, weights=(row,))


def bigraded(n: int, x_indices) -> MonomialOrder:
    """Compare x-degree first, then grevlex."""
    if isinstance(x_indices, int):
        x_indices = range(x_indices)
    idx = frozenset(x_indices)
    row = tuple(1 if i in idx else 0 for i in range(n))
    return MonomialOrder("bigraded-grevlex", n, weights=(row,))


def weighted_grevlex(weights) -> MonomialOrder:
    """Weighted degree, then reverse lex. Weights must be positive."""
    weights = tuple(int(w) for w in weights)
    if any(w <= 0 for w in weights):
        raise ValueError("weighted grevlex needs positive weights")
    return MonomialOrder(f"wgrevlex{weights}", len(weights), degree_weights=weights)


def make_order(kind: str, n: int, **kw) -> MonomialOrder:
    if kind == "grevlex":
        return grevlex(n)
    if kind == "lex":
        return lex(n)
    if kind == "elimination":
        return elimination(n, kw["block"])
    if kind == "bigraded-grevlex":
        return bigraded(n, kw["block"])
    raise ValueError(f"unknown order kind {kind!r}")
