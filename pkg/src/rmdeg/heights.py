"""Random elements of prescribed degrees cutting out an ideal's height step by step."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .ideal import Ideal


class HeightSequenceError(RuntimeError):
    """The retry cap was exhausted at some step."""


@dataclass
class HeightSequence:
    elements: list
    degrees: tuple
    codims: tuple
    attempts: list = field(default_factory=list)


def generic_height_sequence(a: Ideal, height: int | None = None, seed: int = 0,
                            retries: int = 10, bound: int = 50) -> HeightSequence:
    """alpha_1, ..., alpha_h in ``a`` with deg alpha_i = d_i and codim(alpha_1..alpha_i) = i.

    With minimal generators g_1, ..., g_r sorted by decreasing degree d_i,
    alpha_i = c g_i + sum_{j > i} l_j g_j where c is a random nonzero scalar
    and l_j random forms of degree d_i - d_j. Each step is retried with fresh
    randomness up to ``retries`` times; the codimension is checked by the
    dimension of the quotient.
    """
    if not a.is_homogeneous():
        raise ValueError("height sequences need a homogeneous ideal")
    ring = a.ring
    F = ring.field
    rng = random.Random(seed)
    gens = sorted(a.minimal_generators(), key=lambda g: -g.degree())
    target = a.codim() if height is None else height
    if target > len(gens):
        raise HeightSequenceError(f"height {target} exceeds the number of generators {len(gens)}")
    elements = []
    codims = []
    attempts = []
    for i in range(target):
        di = gens[i].degree()
        for attempt in range(1, retries + 1):
            alpha = gens[i].scale(F.random_element(rng, bound, nonzero=True))
            for g in gens[i + 1:]:
                alpha = alpha + ring.random_form(di - g.degree(), rng, bound) * g
            if not alpha:
                continue
            c = Ideal(ring, elements + [alpha], a.budget).codim()
            if c == i + 1:
                elements.append(alpha)
                codims.append(c)
                attempts.append(attempt)
                break
        else:
            raise HeightSequenceError(f"no element of degree {di} raised the height to {i + 1} "
                                      f"after {retries} tries")
    return HeightSequence(elements, tuple(e.degree() for e in elements), tuple(codims), attempts)
