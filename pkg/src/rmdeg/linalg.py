"""Exact linear algebra: rank of polynomial matrices modulo a prime ideal, integer minors."""

from __future__ import annotations

import itertools
from math import gcd

from .poly import Polynomial


def rank_mod_ideal(rows: list[list[Polynomial]], q=None) -> int:
    """Rank of a polynomial matrix over the fraction field of B/q.

    Fraction-free elimination: every update multiplies by the pivot instead of
    dividing, and entries are kept as normal forms modulo ``q`` so the zero test
    is exact. ``q`` must be prime (or None/zero for the plain polynomial ring).
    """
    if q is not None and q.is_zero():
        q = None

    def red(f: Polynomial) -> Polynomial:
        return q.normal_form(f) if q is not None and f else f

    M = [[red(e) for e in row] for row in rows]
    if not M:
        return 0
    ncols = len(M[0])
    rank = 0
    col = 0
    while rank < len(M) and col < ncols:
        piv = next((i for i in range(rank, len(M)) if M[i][col]), None)
        if piv is None:
            col += 1
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank][col]
        zero = p.ring.zero
        for i in range(rank + 1, len(M)):
            a = M[i][col]
            if not a:
                continue
            M[i] = [red(p * M[i][j] - a * M[rank][j]) if j > col else zero
                    for j in range(ncols)]
        rank += 1
        col += 1
    return rank


def bareiss_det(M) -> int:
    """Determinant of a square integer matrix by Bareiss' fraction-free elimination."""
    A = [list(map(int, row)) for row in M]
    n = len(A)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def maximal_minors(M):
    """All maximal minors of an integer matrix (size min(rows, cols))."""
    rows, cols = len(M), len(M[0])
    k = min(rows, cols)
    if rows <= cols:
        for cs in itertools.combinations(range(cols), k):
            yield bareiss_det([[M[i][j] for j in cs] for i in range(rows)])
    else:
        for rs in itertools.combinations(range(rows), k):
            yield bareiss_det([M[i] for i in rs])


def gcd_maximal_minors(M) -> int:
    g = 0
    for v in maximal_minors(M):
        g = gcd(g, v)
    return g


def integer_rank(M) -> int:
    """Rank over QQ of an integer matrix."""
    A = [list(map(int, row)) for row in M]
    if not A:
        return 0
    rank = 0
    ncols = len(A[0])
    for col in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][col]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for i in range(rank + 1, len(A)):
            if A[i][col]:
                a, b = A[rank][col], A[i][col]
                A[i] = [a * x - b * y for x, y in zip(A[i], A[rank])]
        rank += 1
    return rank
