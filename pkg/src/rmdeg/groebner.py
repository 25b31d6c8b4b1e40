"""Buchberger's algorithm on raw dict polynomials.

Polynomials are ``{exp: coeff}`` dicts. In module mode the last exponent
coordinate is a position index: monomials only divide each other inside the
same position and S-pairs are only formed between equal positions, so the same
code computes Groebner bases of submodules of free modules.

Pair handling follows the Gebauer-Moeller update (product and chain criteria);
pairs are selected by smallest sugar degree, which is the plain degree for
homogeneous input.
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2


class BudgetExceeded(RuntimeError):
    """A Groebner computation hit its S-pair or degree cap."""


@dataclass(frozen=True)
class Budget:
    max_pairs: int = 500_000
    max_degree: int = 200


DEFAULT_BUDGET = Budget()


def cached_key(key):
    cache: dict = {}

    def k(exp):
        try:
            return cache[exp]
        except KeyError:
            v = cache[exp] = key(exp)
            return v

    return k


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _mdivides(a, b) -> bool:
    if a[-1] != b[-1]:
        return False
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple([x if x > y else y for x, y in zip(a, b)])


def _coprime(a, b) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _inv(c, p):
    if p:
        return pow(int(c), -1, p)
    return gmpy2.mpq(1) / c


def monic(f: dict, lm, p: int) -> dict:
    c = f[lm]
    if c == 1:
        return f
    ci = _inv(c, p)
    if p:
        return {m: v * ci % p for m, v in f.items()}
    return {m: v * ci for m, v in f.items()}


def reduce_full(f: dict, basis, key, p: int, module: bool = False) -> dict:
    """Remainder of ``f`` under full reduction by ``basis``.

    ``basis`` is a list of ``(lm, g)`` with ``g`` monic. The remainder has no
    term divisible by any basis leading monomial.
    """
    div = _mdivides if module else _divides
    f = dict(f)
    rem = {}
    while f:
        m = max(f, key=key)
        c = f[m]
        for lm, g in basis:
            if div(lm, m):
                break
        else:
            rem[m] = f.pop(m)
            continue
        mult = tuple([a - b for a, b in zip(m, lm)])
        if p:
            for gm, gc in g.items():
                mm = tuple([a + b for a, b in zip(gm, mult)])
                v = (f.get(mm, 0) - c * gc) % p
                if v:
                    f[mm] = v
                else:
                    f.pop(mm, None)
        else:
            for gm, gc in g.items():
                mm = tuple([a + b for a, b in zip(gm, mult)])
                v = f.get(mm, 0) - c * gc
                if v:
                    f[mm] = v
                else:
                    f.pop(mm, None)
    return rem


def _spoly(f, lmf, g, lmg, lcm, p):
    mf = tuple([a - b for a, b in zip(lcm, lmf)])
    mg = tuple([a - b for a, b in zip(lcm, lmg)])
    out = {}
    for m, c in f.items():
        out[tuple([a + b for a, b in zip(m, mf)])] = c
    for m, c in g.items():
        mm = tuple([a + b for a, b in zip(m, mg)])
        v = out.get(mm, 0) - c
        if p:
            v %= p
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def groebner_basis(polys, p: int, key, degree=None, module: bool = False, budget: Budget = DEFAULT_BUDGET):
    """Reduced Groebner basis of the ideal (or submodule) spanned by ``polys``.

    ``key`` maps exponent tuples to sortable keys (larger = bigger monomial).
    ``degree`` gives the sugar degree of an exponent (default total degree).
    The output is sorted by decreasing leading monomial and is therefore
    deterministic for a given ideal and order.
    """
    K = cached_key(key)
    if degree is None:
        degree = sum
    div = _mdivides if module else _divides

    polys = [dict(f) for f in polys if f]
    if not polys:
        return []

    store = []  # entries: [lm, poly, sugar]
    G: list[int] = []
    B: list[tuple] = []  # (sugar, lcm_key, i, j, lcm)
    processed = 0

    def basis_view():
        return [(store[i][0], store[i][1]) for i in G]

    def update(h_idx):
        nonlocal B, G
        lmh = store[h_idx][0]
        sug_h = store[h_idx][2]
        dh = degree(lmh)
        C = []
        for g in G:
            lmg = store[g][0]
            if module and lmg[-1] != lmh[-1]:
                continue
            C.append((g, _lcm(lmh, lmg)))
        D = []
        while C:
            g1, l1 = C.pop()
            if not module and _coprime(lmh, store[g1][0]):
                D.append((g1, l1))
                continue
            if any(_divides(l2, l1) for _, l2 in C) or any(_divides(l2, l1) for _, l2 in D):
                continue
            D.append((g1, l1))
        E = []
        for g, l in D:
            if not module and _coprime(lmh, store[g][0]):
                continue
            dl = degree(l)
            sug = max(sug_h + dl - dh, store[g][2] + dl - degree(store[g][0]))
            E.append((sug, K(l), h_idx, g, l))
        newB = []
        for pair in B:
            _, _, g1, g2, l = pair
            if div(lmh, l):
                l1 = _lcm(store[g1][0], lmh)
                l2 = _lcm(store[g2][0], lmh)
                if l1 != l and l2 != l:
                    continue
            newB.append(pair)
        B = newB + E
        G = [g for g in G if not div(lmh, store[g][0])] + [h_idx]

    def add(h, sugar):
        lm = max(h, key=K)
        h = monic(h, lm, p)
        store.append([lm, h, sugar])
        update(len(store) - 1)

    for f in sorted(polys, key=lambda f: K(max(f, key=K))):
        sug = max(degree(m) for m in f)
        h = reduce_full(f, basis_view(), K, p, module)
        if h:
            add(h, sug)

    while B:
        best = min(range(len(B)), key=lambda i: (B[i][0], B[i][1]))
        sug, _, i, j, l = B.pop(best)
        processed += 1
        if processed > budget.max_pairs:
            raise BudgetExceeded(f"S-pair budget of {budget.max_pairs} exceeded")
        if sug > budget.max_degree:
            raise BudgetExceeded(f"degree budget of {budget.max_degree} exceeded (sugar {sug})")
        s = _spoly(store[i][1], store[i][0], store[j][1], store[j][0], l, p)
        if not s:
            continue
        h = reduce_full(s, basis_view(), K, p, module)
        if h:
            add(h, sug)

    # interreduce the minimal basis
    basis = basis_view()
    out = []
    for idx, (lm, g) in enumerate(basis):
        others = basis[:idx] + basis[idx + 1:]
        r = reduce_full(g, others, K, p, module)
        out.append((lm, monic(r, lm, p)))
    out.sort(key=lambda t: K(t[0]), reverse=True)
    return [g for _, g in out]


def leading_monomials(basis, key):
    K = cached_key(key)
    return [max(g, key=K) for g in basis]


def normal_form(f: dict, basis, key, p: int, module: bool = False) -> dict:
    K = cached_key(key)
    view = [(max(g, key=K), g) for g in basis]
    return reduce_full(f, view, K, p, module)


# --- module helpers --------------------------------------------------------


def pot_key(key):
    """Position-over-term: position 0 largest, then ``key`` on the monomial part."""

    def k(exp):
        return (-exp[-1],) + tuple(key(exp[:-1]))

    return k


def vectors_to_module(vectors, offset: int = 0):
    """List of component lists (dicts) -> module dicts with trailing position."""
    out = []
    for vec in vectors:
        d = {}
        for pos, comp in enumerate(vec):
            for m, c in comp.items():
                d[m + (pos + offset,)] = c
        out.append(d)
    return out


def module_to_vector(elem: dict, rank: int, offset: int = 0):
    vec = [dict() for _ in range(rank)]
    for m, c in elem.items():
        vec[m[-1] - offset][m[:-1]] = c
    return vec


def syzygies(vectors, rank: int, p: int, row_shifts=None, col_degrees=None,
             base_key=None, budget: Budget = DEFAULT_BUDGET):
    """Generators of the syzygy module of the columns ``vectors`` (each in R^rank).

    Uses the submodule generated by (v_j, e_j) under a position-over-term order
    that ranks the first ``rank`` positions highest; basis elements living
    entirely in the trailing positions generate the syzygies.
    """
    k = len(vectors)
    if k == 0:
        return []
    nv = None
    for vec in vectors:
        for comp in vec:
            for m in comp:
                nv = len(m)
                break
            if nv is not None:
                break
        if nv is not None:
            break
    if nv is None:
        raise ValueError("all input vectors are zero")
    if row_shifts is None:
        row_shifts = [0] * rank
    if col_degrees is None:
        col_degrees = []
        for vec in vectors:
            ds = [sum(m) + row_shifts[i] for i, comp in enumerate(vec) for m in comp]
            col_degrees.append(max(ds) if ds else 0)
    if base_key is None:
        def base_key(e):
            return (sum(e),) + tuple(-x for x in reversed(e))
    shifts = list(row_shifts) + list(col_degrees)

    def degree(exp):
        return sum(exp[:-1]) + shifts[exp[-1]]

    elems = []
    zero = (0,) * nv
    for j, vec in enumerate(vectors):
        d = {}
        for pos, comp in enumerate(vec):
            for m, c in comp.items():
                d[m + (pos,)] = c
        d[zero + (rank + j,)] = 1
        elems.append(d)
    gb = groebner_basis(elems, p, pot_key(base_key), degree=degree, module=True, budget=budget)
    K = pot_key(base_key)
    syz = []
    for g in gb:
        lm = max(g, key=K)
        if lm[-1] >= rank:
            syz.append(module_to_vector(g, k, offset=rank))
    return syz
