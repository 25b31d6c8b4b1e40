"""Polynomial rings and immutable polynomials with (bi)graded bookkeeping."""

from __future__ import annotations

from . import _dense
from .field import Field
from .orders import MonomialOrder, grevlex


class RingMismatch(ValueError):
    pass


class PolyRing:
    """k[v_0, ..., v_{N-1}] with an optional x-block / y-block split.

    ``x_vars`` names the block of bidegree (1, 0); everything else has
    bidegree (0, 1). Without ``x_vars`` the ring is singly graded.
    """

    def __init__(self, variables, field: Field | int = 0, x_vars=None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        for v in variables:
            if not v.isidentifier():
                raise ValueError(f"invalid variable name {v!r}")
        self.field = field if isinstance(field, Field) else Field(field)
        self.variables = variables
        self.nvars = len(variables)
        self._index = {v: i for i, v in enumerate(variables)}
        if x_vars is not None:
            x_vars = tuple(x_vars)
            unknown = [v for v in x_vars if v not in self._index]
            if unknown:
                raise ValueError(f"x-block variables {unknown} not in ring")
            self.x_vars = x_vars
            self.x_indices = tuple(sorted(self._index[v] for v in x_vars))
        else:
            self.x_vars = None
            self.x_indices = None
        self.order: MonomialOrder = grevlex(self.nvars)
        self._key = self.order.key_function()

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def bigraded(self) -> bool:
        return self.x_vars is not None

    @property
    def y_vars(self):
        if self.x_vars is None:
            return None
        return tuple(v for v in self.variables if v not in self.x_vars)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.variables == other.variables
            and self.field == other.field
            and self.x_vars == other.x_vars
        )

    def __hash__(self):
        return hash((self.variables, self.field, self.x_vars))

    def __repr__(self):
        return f"PolyRing({list(self.variables)}, {self.field!r})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def __contains__(self, name):
        return name in self._index

    # constructors -------------------------------------------------------

    def zero_exp(self) -> tuple:
        return (0,) * self.nvars

    def from_dict(self, terms: dict) -> "Polynomial":
        p = self.p
        if p:
            terms = {m: c % p for m, c in terms.items() if c % p}
        else:
            terms = {m: c for m, c in terms.items() if c}
        return Polynomial(self, terms)

    def const(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {self.zero_exp(): c} if c else {})

    @property
    def zero(self):
        return Polynomial(self, {})

    @property
    def one(self):
        return self.const(1)

    def var(self, name: str) -> "Polynomial":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): self.field(1)})

    def gens(self):
        return [self.var(v) for v in self.variables]

    def monomial(self, exp, c=1) -> "Polynomial":
        exp = tuple(int(e) for e in exp)
        if len(exp) != self.nvars or min(exp, default=0) < 0:
            raise ValueError(f"bad exponent vector {exp}")
        return self.from_dict({exp: self.field(c)})

    def parse(self, text: str) -> "Polynomial":
        from .parse import parse_polynomial

        return parse_polynomial(text, self)

    __call__ = parse

    def with_field(self, field) -> "PolyRing":
        return PolyRing(self.variables, field, self.x_vars)

    def extend(self, new_vars, front: bool = False, x_vars=None) -> "PolyRing":
        new_vars = tuple(new_vars)
        names = new_vars + self.variables if front else self.variables + new_vars
        return PolyRing(names, self.field, x_vars if x_vars is not None else self.x_vars)

    def fresh_name(self, stem: str) -> str:
        name, k = stem, 0
        while name in self._index:
            k += 1
            name = f"{stem}{k}"
        return name

    def monomials_of_degree(self, deg: int, indices=None):
        """All exponent vectors of total degree ``deg`` in the given variables."""
        idx = list(range(self.nvars)) if indices is None else list(indices)
        out = []

        def rec(i, left, cur):
            if i == len(idx) - 1:
                cur[idx[i]] = left
                out.append(tuple(cur))
                cur[idx[i]] = 0
                return
            for e in range(left, -1, -1):
                cur[idx[i]] = e
                rec(i + 1, left - e, cur)
            cur[idx[i]] = 0

        if not idx:
            return [self.zero_exp()] if deg == 0 else []
        rec(0, deg, [0] * self.nvars)
        return out

    def random_form(self, deg: int, rng, bound: int = 50, indices=None) -> "Polynomial":
        terms = {}
        for m in self.monomials_of_degree(deg, indices):
            c = self.field.random_element(rng, bound)
            if c:
                terms[m] = c
        return Polynomial(self, terms)


class Polynomial:
    """Immutable polynomial; ``_terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self._terms = terms
        self._hash = None

    # structure ----------------------------------------------------------

    @property
    def terms(self):
        """(coefficient, exponent) pairs, strictly decreasing in the ring order."""
        key = self.ring._key
        return [(self._terms[m], m) for m in sorted(self._terms, key=key, reverse=True)]

    def as_dict(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def leading_monomial(self, order: MonomialOrder | None = None):
        if not self._terms:
            return None
        key = self.ring._key if order is None else order.key_function()
        return max(self._terms, key=key)

    def leading_coefficient(self, order=None):
        lm = self.leading_monomial(order)
        return None if lm is None else self._terms[lm]

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def bidegree(self):
        if not self.ring.bigraded:
            raise ValueError("ring has no bigrading")
        xi = self.ring.x_indices
        degs = {(sum(m[i] for i in xi), sum(m) - sum(m[i] for i in xi)) for m in self._terms}
        if len(degs) != 1:
            return None
        return degs.pop()

    def x_degree(self) -> int:
        xi = self.ring.x_indices
        return max(sum(m[i] for i in xi) for m in self._terms)

    def is_homogeneous(self, weights=None) -> bool:
        if weights is None:
            degs = {sum(m) for m in self._terms}
        else:
            degs = {sum(w * e for w, e in zip(weights, m)) for m in self._terms}
        return len(degs) <= 1

    def is_bihomogeneous(self) -> bool:
        return not self._terms or self.bidegree() is not None

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def variables_used(self):
        used = set()
        for m in self._terms:
            used.update(i for i, e in enumerate(m) if e)
        return {self.ring.variables[i] for i in used}

    def monic(self, order=None) -> "Polynomial":
        lc = self.leading_coefficient(order)
        if lc is None:
            return self
        return Polynomial(self.ring, _dense.scale(self._terms, self.ring.field.inv(lc), self.ring.p))

    def content_monomial(self) -> tuple:
        """Largest monomial dividing every term (the monomial gcd)."""
        if not self._terms:
            return self.ring.zero_exp()
        it = iter(self._terms)
        g = list(next(it))
        for m in it:
            g = [min(a, b) for a, b in zip(g, m)]
        return tuple(g)

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{other.ring!r} vs {self.ring!r}")
            return other
        if isinstance(other, int) or hasattr(other, "denominator"):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, _dense.add(self._terms, other._terms, self.ring.p))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, _dense.add(self._terms, other._terms, self.ring.p, -1))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return Polynomial(self.ring, _dense.scale(self._terms, self.ring.field(-1), self.ring.p))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prod = _dense.mul(self._terms, other._terms, self.ring.p)
        _dense.check_exponents(prod)
        return Polynomial(self.ring, prod)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return Polynomial(self.ring, _dense.power(self._terms, int(k), self.ring.zero_exp(), self.ring.p))

    def scale(self, c) -> "Polynomial":
        return Polynomial(self.ring, _dense.scale(self._terms, self.ring.field(c), self.ring.p))

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, int):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # evaluation / substitution -------------------------------------------

    def evaluate(self, point):
        """Value at a point given as a sequence of field elements (all variables)."""
        F = self.ring.field
        vals = [F(v) for v in point]
        if len(vals) != self.ring.nvars:
            raise ValueError("point has wrong length")
        p = self.ring.p
        total = 0
        for m, c in self._terms.items():
            t = c
            for v, e in zip(vals, m):
                if e:
                    t = t * v**e
                    if p:
                        t %= p
            total += t
        return total % p if p else total

    def specialize(self, assignment: dict, target: PolyRing | None = None) -> "Polynomial":
        return specialize(self, assignment, target)

    def change_ring(self, target: PolyRing) -> "Polynomial":
        """Re-express in ``target`` by variable name (identity substitution)."""
        if target == self.ring:
            return self
        src = self.ring.variables
        pos = []
        for i, v in enumerate(src):
            pos.append(target._index.get(v))
        out = {}
        for m, c in self._terms.items():
            e = [0] * target.nvars
            for i, k in enumerate(m):
                if k:
                    if pos[i] is None:
                        raise RingMismatch(f"variable {src[i]!r} missing from target ring")
                    e[pos[i]] = k
            out[tuple(e)] = target.field(c) if target.field != self.ring.field else c
        return target.from_dict(out)

    # printing -----------------------------------------------------------

    def __str__(self):
        from .parse import format_polynomial

        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self})"


def specialize(f: Polynomial, assignment: dict, target: PolyRing | None = None) -> Polynomial:
    """Substitute field elements or polynomials for variables of ``f``.

    ``assignment`` maps variable names to scalars or Polynomials over
    ``target`` (default: f's ring). Variables not assigned are carried over by
    name and must exist in ``target``.
    """
    src = f.ring
    target = src if target is None else target
    p = target.p
    images = []
    for v in src.variables:
        if v in assignment:
            val = assignment[v]
            if isinstance(val, Polynomial):
                if val.ring != target:
                    val = val.change_ring(target)
                images.append(val._terms)
            else:
                c = target.field(val)
                images.append({target.zero_exp(): c} if c else {})
        else:
            images.append(None)
    powers: dict = {}

    def pw(i, e):
        key = (i, e)
        if key not in powers:
            powers[key] = _dense.power(images[i], e, target.zero_exp(), p)
        return powers[key]

    out: dict = {}
    for m, c in f._terms.items():
        term = {target.zero_exp(): target.field(c) if target.field != src.field else c}
        rest = [0] * target.nvars
        for i, e in enumerate(m):
            if not e:
                continue
            if images[i] is None:
                j = target._index.get(src.variables[i])
                if j is None:
                    raise RingMismatch(f"variable {src.variables[i]!r} not assigned and not in target")
                rest[j] += e
            else:
                term = _dense.mul(term, pw(i, e), p)
                if not term:
                    break
        if not term:
            continue
        if any(rest):
            term = _dense.mono_mul(term, tuple(rest), 1, p)
        out = _dense.add(out, term, p)
    return Polynomial(target, out)
