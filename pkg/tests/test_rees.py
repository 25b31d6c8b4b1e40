import random

import pytest

from rmdeg.ideal import Ideal
from rmdeg.poly import specialize
from rmdeg.rees import (
    MapSpecError,
    RationalMapSpec,
    analytic_spread,
    build_rees_data,
    presentation_matrix,
    rees_ideal,
    rees_ring,
    symmetric_ideal,
    x_linear_part,
)

from _util import CORPUS, polys, ring, spec_of


def _spec(forms, names="x,y,z", p=0, P=None):
    R = ring(names, p)
    return RationalMapSpec(R, polys(R, *forms), polys(R, *P) if P else None)


def _rees(forms, names="x,y,z"):
    return build_rees_data(_spec(forms, names))


def test_symmetric_ideal_examples():
    r = _rees(["x", "y"], "x,y")
    S = r.S
    assert r.L == Ideal(S, [S.parse("y*y0 - x*y1")])
    r = _rees(["x^2", "y*z", "z^2"])
    S = r.S
    assert r.L == Ideal(S, polys(S, "z*y1 - y*y2", "z^2*y0 - x^2*y2", "y*z*y0 - x^2*y1"))
    r = _rees(["x^2", "x*y"], "x,y")
    assert r.L == Ideal(r.S, [r.S.parse("y*y0 - x*y1")])


def test_symmetric_generators_are_bihomogeneous():
    r = _rees(["x^2", "y*z", "z^2"])
    for g, c in zip(r.L.gens, r.psi.col_degrees):
        assert g.is_bihomogeneous()
        assert g.bidegree() == (c - 2, 1)


def test_rees_ideal_examples():
    for forms, names in [(["x^2", "x*y"], "x,y"), (["x^2", "y^2"], "x,y"), (["x^2", "y*z", "z^2"], "x,y,z")]:
        r = _rees(forms, names)
        assert r.J == r.L
        assert r.linear_type
    r = _rees(["x^2", "y^2"], "x,y")
    assert r.J == Ideal(r.S, [r.S.parse("y^2*y0 - x^2*y1")])


def test_veronese_is_not_of_linear_type():
    r = _rees(["x^2", "x*y", "y^2"], "x,y")
    assert not r.linear_type
    assert r.q == Ideal(r.B, [r.B.parse("y0*y2 - y1^2")])
    assert r.ell == 2
    assert r.s == 1


def test_special_fiber_examples():
    r = _rees(["x*y", "x*z", "y*z"])
    assert r.q.is_zero()
    assert r.ell == 3
    r = _rees(["x^2", "x*y"], "x,y")
    assert r.q.is_zero()
    assert analytic_spread(r.q) == 2


def test_jdrank_examples():
    assert _rees(["x^2", "y*z", "z^2"]).s == 1
    assert _rees(["x^2*y", "x*z^2", "y^2*z"]).s == 0
    assert _rees(["x*y", "x*z", "y*z"]).s == 2


def test_x_linear_part_examples():
    r = _rees(["x^2", "y^2"], "x,y")
    assert r.x_linear == [] and r.x_linear_empty
    r = _rees(["x^2", "y*z", "z^2"])
    assert len(r.x_linear) == 1
    assert r.x_linear[0] == r.S.parse("z*y1 - y*y2") or r.x_linear[0] == r.S.parse("y*y2 - z*y1")
    r = _rees(["x*y", "x*z", "y*z"])
    lin = Ideal(r.S, r.x_linear)
    assert lin == Ideal(r.S, polys(r.S, "z*y0 - y*y1", "y*y1 - x*y2"))


def test_y_degree_cap_only_trims_the_listing():
    spec = _spec(["x*y", "x*z", "y*z"])
    full = build_rees_data(spec)
    capped = build_rees_data(spec, y_degree_cap=1)
    assert capped.s == full.s
    kept, dropped = x_linear_part(full.J, 0)
    assert kept == [] and len(dropped) == 2


def test_spec_validation():
    with pytest.raises(MapSpecError):
        _spec(["x^2", "y"])
    with pytest.raises(MapSpecError):
        _spec(["x^2 + y"])
    with pytest.raises(MapSpecError):
        _spec(["x*z - y^2"], P=["x*z - y^2"])
    with pytest.raises(MapSpecError):
        _spec(["0", "0"])


def test_variety_adjoined_before_saturation():
    spec = spec_of("conic-proj")
    r = build_rees_data(spec)
    assert spec.t == 1
    assert spec.coordinate_multiplicity() == 2
    S = r.S
    assert S.parse("x*z - y^2") in r.J
    assert r.ell == spec.t + 1


# --- exactness of the presentation on the corpus -------------------------------


@pytest.mark.parametrize("name", CORPUS)
def test_rees_presentation_is_exact(name):
    spec = spec_of(name)
    r = build_rees_data(spec)
    assert r.L.issubset(r.J)
    images = dict(zip(r.S.y_vars, spec.forms))
    for g in r.J.groebner():
        assert g.is_bihomogeneous()
        image = specialize(g, images, spec.ring)
        assert image.is_zero() or image in spec.P
    for g in r.q.gens:
        assert specialize(g, dict(zip(r.B.variables, spec.forms)), spec.ring) in spec.P
        assert g.change_ring(r.S) in r.J
    assert 0 <= r.s <= spec.n
    assert r.ell == spec.t + 1


@pytest.mark.parametrize("name", CORPUS)
def test_jdrank_invariant_under_coordinate_change(name):
    spec = spec_of(name, 32003)
    base = build_rees_data(spec).s
    rng = random.Random(name)
    F = spec.ring.field
    m1 = len(spec.forms)
    for _ in range(5):
        while True:
            A = [[F.random_element(rng) for _ in range(m1)] for _ in range(m1)]
            from rmdeg.linalg import integer_rank

            if integer_rank([[int(a) for a in row] for row in A]) == m1:
                break
        forms = [sum((f.scale(a) for a, f in zip(row, spec.forms)), spec.ring.zero) for row in A]
        if any(f.is_zero() for f in forms):
            continue
        new = RationalMapSpec(spec.ring, forms, spec.P)
        assert build_rees_data(new).s == base


def test_jdrank_equals_n_exactly_for_birational_corpus_maps():
    for name in ("cremona", "koszul-p1", "veronese"):
        spec = spec_of(name)
        assert build_rees_data(spec).s == spec.n


def test_rees_ring_names_avoid_clashes():
    spec = _spec(["y0", "x"], "x,y0")
    S = rees_ring(spec)
    assert len(set(S.variables)) == S.nvars
    psi = presentation_matrix(spec)
    L = symmetric_ideal(spec, psi, S)
    assert rees_ideal(spec, L) == L
