"""Syzygy modules, minimal graded free resolutions and Betti tables."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import groebner as gb
from .groebner import DEFAULT_BUDGET, Budget
from .poly import Polynomial, PolyRing


@dataclass(frozen=True)
class GradedMatrix:
    """Polynomial matrix stored by columns; column j maps into a free module
    with basis degrees ``row_degrees`` and has degree ``col_degrees[j]``."""

    ring: PolyRing
    columns: tuple
    row_degrees: tuple
    col_degrees: tuple

    @property
    def nrows(self) -> int:
        return len(self.row_degrees)

    @property
    def ncols(self) -> int:
        return len(self.columns)

    def entry(self, i: int, j: int) -> Polynomial:
        return self.columns[j][i]

    @property
    def entries(self) -> list[list[Polynomial]]:
        return [[col[i] for col in self.columns] for i in range(self.nrows)]

    def is_graded(self) -> bool:
        for j, col in enumerate(self.columns):
            for i, e in enumerate(col):
                if e and not (e.is_homogeneous() and e.degree() == self.col_degrees[j] - self.row_degrees[i]):
                    return False
        return True

    def row_times(self, row) -> list[Polynomial]:
        """Entries of the row vector ``row`` times this matrix."""
        out = []
        for col in self.columns:
            acc = self.ring.zero
            for a, e in zip(row, col):
                if e:
                    acc = acc + (a * e if isinstance(a, Polynomial) else e.scale(a))
            out.append(acc)
        return out

    def to_lists(self):
        return [[str(e) for e in row] for row in self.entries]


def _vec_degree(vec, row_degrees):
    for i, comp in enumerate(vec):
        for m in comp:
            return sum(m) + row_degrees[i]
    return None


def _grevlex_key(e):
    return (sum(e),) + tuple(-x for x in reversed(e))


def _module_gb(vectors, row_degrees, p, budget):
    elems = gb.vectors_to_module(vectors)
    shifts = list(row_degrees)
    key = gb.pot_key(_grevlex_key)
    basis = gb.groebner_basis(elems, p, key, degree=lambda e: sum(e[:-1]) + shifts[e[-1]],
                              module=True, budget=budget)
    return basis, key


def minimal_subset(candidates, base, row_degrees, p: int, budget: Budget = DEFAULT_BUDGET):
    """Indices of a minimal set of ``candidates`` generating, together with
    ``base``, the same graded submodule of the free module with the given basis
    degrees. Elements in the span of ``base`` are never chosen.

    Works degree by degree: a candidate is kept when its normal form modulo the
    submodule generated in lower degrees (plus the kept ones) is linearly
    independent of the kept normal forms of the same degree.
    """
    degs = [_vec_degree(v, row_degrees) for v in candidates]
    base_degs = [_vec_degree(v, row_degrees) for v in base]
    key = gb.pot_key(_grevlex_key)
    kept: list[int] = []
    for delta in sorted({d for d in degs if d is not None}):
        lower = [b for b, bd in zip(base, base_degs) if bd is not None and bd <= delta]
        lower += [candidates[i] for i in kept]
        if lower:
            basis, _ = _module_gb(lower, row_degrees, p, budget)
            view = [(max(g, key=key), g) for g in basis]
        else:
            view = []
        echelon: list = []
        for i, (v, d) in enumerate(zip(candidates, degs)):
            if d != delta:
                continue
            elem = gb.vectors_to_module([v])[0]
            nf = gb.reduce_full(elem, view, key, p, module=True)
            if not nf:
                continue
            nf = _reduce_echelon(nf, echelon, key, p)
            if nf:
                lm = max(nf, key=key)
                echelon.append((lm, gb.monic(nf, lm, p)))
                kept.append(i)
    return sorted(kept, key=lambda i: (degs[i], i))


def _reduce_echelon(vec: dict, echelon, key, p: int) -> dict:
    vec = dict(vec)
    pivots = dict(echelon)
    while True:
        hit = [m for m in vec if m in pivots]
        if not hit:
            return vec
        m = max(hit, key=key)
        c = vec[m]
        for mm, cc in pivots[m].items():
            v = vec.get(mm, 0) - c * cc
            if p:
                v %= p
            if v:
                vec[mm] = v
            else:
                vec.pop(mm, None)


def minimal_generators(gens: list[Polynomial], budget: Budget = DEFAULT_BUDGET) -> list[Polynomial]:
    """Minimal homogeneous generators of the ideal spanned by ``gens``."""
    gens = [g for g in gens if g]
    if not gens:
        return []
    for g in gens:
        if not g.is_homogeneous():
            raise ValueError(f"generator {g} is not homogeneous")
    idx = minimal_subset([[g._terms] for g in gens], [], [0], gens[0].ring.p, budget)
    return [gens[i] for i in idx]


def _check_gens(gens):
    if not gens:
        raise ValueError("no generators")
    for g in gens:
        if not g:
            raise ValueError("zero generator among the inputs")
        if not g.is_homogeneous():
            raise ValueError(f"generator {g} is not homogeneous")


def syzygy_module(gens: list[Polynomial], P=None, budget: Budget = DEFAULT_BUDGET) -> GradedMatrix:
    """Minimal graded presentation matrix of the ideal generated by ``gens``.

    Columns generate all syzygies. With a homogeneous ideal ``P`` the syzygies
    are taken modulo P: syzygies of (gens, P-generators) are projected to the
    first ``len(gens)`` coordinates and pruned modulo P times the free module.
    """
    _check_gens(gens)
    ring = gens[0].ring
    p = ring.p
    k = len(gens)
    pgens = [g for g in (P.gens if P is not None else ()) if g]
    allg = list(gens) + pgens
    degs = [g.degree() for g in allg]
    vectors = [[g._terms] for g in allg]
    raw = gb.syzygies(vectors, 1, p, row_shifts=[0], col_degrees=degs, budget=budget)
    proj = [v[:k] for v in raw]
    proj = [v for v in proj if any(v)]
    row_degrees = [g.degree() for g in gens]
    base = []
    for i in range(k):
        for pg in pgens:
            vec = [dict() for _ in range(k)]
            vec[i] = dict(pg._terms)
            base.append(vec)
    idx = minimal_subset(proj, base, row_degrees, p, budget)
    cols = []
    cdeg = []
    for i in idx:
        v = proj[i]
        cols.append(tuple(Polynomial(ring, c) for c in v))
        cdeg.append(_vec_degree(v, row_degrees))
    return GradedMatrix(ring, tuple(cols), tuple(row_degrees), tuple(cdeg))


def syzygy_degree_vector(psi: GradedMatrix, d: int) -> tuple:
    """Syzygy degrees d_i = column degree - d, sorted descending."""
    if any(r != d for r in psi.row_degrees):
        raise ValueError(f"row degrees {psi.row_degrees} are not all equal to {d}")
    return tuple(sorted((c - d for c in psi.col_degrees), reverse=True))


# --- Betti tables -----------------------------------------------------------


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers of an ideal: beta[(i, j)] is the number of degree-j
    generators of the i-th free module (i = 0 holds the generators)."""

    betti: dict = field(default_factory=dict)
    truncated: bool = False

    @property
    def length(self) -> int:
        return max((i for i, _ in self.betti), default=-1)

    @property
    def regularity(self) -> int:
        return regularity(self)

    def ranks(self) -> list[int]:
        out = [0] * (self.length + 1)
        for (i, _), b in self.betti.items():
            out[i] += b
        return out

    def shifts(self, i: int) -> dict:
        return {j: b for (ii, j), b in sorted(self.betti.items()) if ii == i}

    def as_json(self) -> dict:
        return {f"{i},{j}": b for (i, j), b in sorted(self.betti.items())}

    @classmethod
    def from_json(cls, data: dict) -> "BettiTable":
        return cls({tuple(int(x) for x in k.split(",")): v for k, v in data.items()})

    def staircase(self) -> str:
        """Text layout with rows j - i and columns i."""
        if not self.betti:
            return "(zero ideal)"
        L = self.length
        lo = min(j - i for i, j in self.betti)
        hi = max(j - i for i, j in self.betti)
        cells = [[str(self.betti.get((i, r + i), ".")) for i in range(L + 1)] for r in range(lo, hi + 1)]
        total = [str(x) for x in self.ranks()]
        width = max(len(c) for row in cells + [total] for c in row)
        labels = [f"{r}:" for r in range(lo, hi + 1)]
        lw = max(len("total:"), max(len(x) for x in labels))
        lines = [" " * lw + " " + " ".join(str(i).rjust(width) for i in range(L + 1))]
        lines.append("total:".rjust(lw) + " " + " ".join(c.rjust(width) for c in total))
        for lab, row in zip(labels, cells):
            lines.append(lab.rjust(lw) + " " + " ".join(c.rjust(width) for c in row))
        return "\n".join(lines)


def regularity(table: BettiTable) -> int:
    """max(j - i) over the nonzero entries (regularity of the ideal)."""
    if not table.betti:
        raise ValueError("empty Betti table")
    return max(j - i for i, j in table.betti)


def minimal_free_resolution(ideal, budget: Budget | None = None) -> BettiTable:
    """Betti table of a homogeneous ideal over its polynomial ring."""
    budget = budget or getattr(ideal, "budget", DEFAULT_BUDGET)
    gens = [g for g in ideal.gens if g]
    if not gens:
        return BettiTable({})
    ring = gens[0].ring
    p = ring.p
    gens = minimal_generators(gens, budget)
    betti: dict = {}
    for g in gens:
        betti[(0, g.degree())] = betti.get((0, g.degree()), 0) + 1
    vectors = [[g._terms] for g in gens]
    row_degrees = [0]
    col_degrees = [g.degree() for g in gens]
    i = 0
    truncated = False
    while vectors:
        if i + 1 > ring.nvars:
            truncated = True
            break
        raw = gb.syzygies(vectors, len(row_degrees), p, row_shifts=row_degrees,
                          col_degrees=col_degrees, budget=budget)
        raw = [v for v in raw if any(v)]
        if not raw:
            break
        idx = minimal_subset(raw, [], col_degrees, p, budget)
        new = [raw[j] for j in idx]
        new_degs = [_vec_degree(v, col_degrees) for v in new]
        i += 1
        for d in new_degs:
            betti[(i, d)] = betti.get((i, d), 0) + 1
        vectors, row_degrees, col_degrees = new, col_degrees, new_degs
    return BettiTable(betti, truncated)
