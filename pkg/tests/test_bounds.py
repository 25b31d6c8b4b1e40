from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rmdeg.bounds import (
    HOLDS,
    NOT_APPLICABLE,
    VIOLATED,
    Bound,
    BoundContext,
    lower_bounds,
    noether_obstruction,
    regularity_bound_check,
    upper_bounds,
)

from _util import polys, ring


def _ctx(**kw):
    base = dict(n=2, m=2, d=2, t=2, e=1, degrees=(2, 2, 1), s=1, codim_I=2)
    base.update(kw)
    return BoundContext(**base)


def _by_name(bounds):
    return {b.name: b for b in bounds}


def test_upper_bounds_first_monomial_example():
    b = _by_name(upper_bounds(_ctx(improved_side=False, improved_reason="obstruction")))
    assert b["syzygy-product"].value == 2
    assert b["linear-rank"].value == 2
    assert not b["linear-rank-improved"].applicable
    assert b["surface-source"].value == 2


def test_upper_bounds_second_monomial_example():
    b = _by_name(upper_bounds(_ctx(d=3, degrees=(2, 2, 2), s=0)))
    assert b["syzygy-product"].value == 4
    assert b["syzygy-rank"].value == 4
    assert b["linear-rank"].value == 4
    assert b["koszul-rank"].value == 9


def test_complete_intersection_equality():
    b = _by_name(upper_bounds(_ctx(degrees=(2, 2, 2), s=0, codim_I=3)))
    ci = b["complete-intersection"]
    assert ci.kind == "equality" and ci.applicable and ci.value == 4
    b = _by_name(upper_bounds(_ctx(degrees=(2, 2, 2), s=0, codim_I=2)))
    assert not b["complete-intersection"].applicable


def test_linear_rank_cases():
    assert _by_name(upper_bounds(_ctx(t=3, n=3, degrees=(3, 2, 2, 1), s=1)))["linear-rank"].value == 6
    assert _by_name(upper_bounds(_ctx(s=2)))["linear-rank"].value == 1
    assert _by_name(upper_bounds(_ctx(s=3, e=2)))["linear-rank"].value == 2


def test_factorial_refinement_needs_factoriality_and_surface():
    ctx = _ctx(P_zero=False, P_principal=True, degrees=(3, 2, 1))
    assert not _by_name(upper_bounds(ctx))["factorial-refinement"].applicable
    ctx.factorial = True
    b = _by_name(upper_bounds(ctx))["factorial-refinement"]
    assert b.applicable and b.value == 2
    assert not _by_name(upper_bounds(_ctx(t=1, n=1, degrees=(1,))))["factorial-refinement"].applicable


def test_surface_source_cases():
    assert _by_name(upper_bounds(_ctx(s=2, degrees=(1, 1))))["surface-source"].kind == "equality"
    assert _by_name(upper_bounds(_ctx(s=0, degrees=(3, 2, 1))))["surface-source"].value == 3
    assert not _by_name(upper_bounds(_ctx(t=3, n=3, degrees=(2, 2, 2))))["surface-source"].applicable


def test_common_factor_bound():
    b = _by_name(upper_bounds(_ctx(d=3, degrees=(2, 2, 2), s=0, delta=1)))["common-factor"]
    assert b.applicable and b.value == 6
    assert not _by_name(upper_bounds(_ctx(delta=0)))["common-factor"].applicable


def test_grade_condition_gates_rank_bounds():
    b = _by_name(upper_bounds(_ctx(codim_I=1)))
    assert not b["syzygy-rank"].applicable
    assert not b["koszul-rank"].applicable
    assert b["syzygy-product"].applicable


def test_standing_hypotheses_disable_everything():
    for kw in ({"generically_finite": False}, {"nondegenerate": False}, {"t": 0}):
        out = upper_bounds(_ctx(**kw)) + lower_bounds(_ctx(**kw))
        assert not any(b.applicable for b in out)


def test_lower_bound_examples():
    b = _by_name(lower_bounds(_ctx(d=3, degrees=(2, 2, 2), s=0, reg_proxy=2, x_linear_empty=True)))
    assert b["jdrank-defect"].value == 3
    assert b["jdrank-regularity"].value == 3
    assert b["no-linear-part"].applicable and b["no-linear-part"].value == 3
    b = _by_name(lower_bounds(_ctx(s=2, degrees=(1, 1), reg_proxy=1)))
    assert b["jdrank-defect"].value == 1
    assert not b["no-linear-part"].applicable
    b = _by_name(lower_bounds(_ctx(s=0, x_linear_empty=True, x_linear_truncated=True)))
    assert not b["no-linear-part"].applicable
    b = _by_name(lower_bounds(_ctx(P_zero=False, reg_proxy=2)))
    assert not b["jdrank-regularity"].applicable


def test_regularity_bound_examples():
    b = regularity_bound_check(2, (2, 2, 2), 2)
    assert b.value == 3 and b.verdict == HOLDS
    b = regularity_bound_check(2, (2, 2, 1), 2)
    assert b.value == 2 and b.verdict == HOLDS
    assert regularity_bound_check(1, (1,), 1).verdict == NOT_APPLICABLE
    assert regularity_bound_check(2, (2, 2, 1), 3).verdict == VIOLATED
    assert regularity_bound_check(2, (2, 2, 1), 2, P_zero=False).verdict == NOT_APPLICABLE
    assert regularity_bound_check(3, (3, 2, 2, 1), 1).value == 3 + 2 + 1 - 3 + 1


def test_judging_verdicts():
    assert Bound("u", "upper", 4, True).judge(3) == HOLDS
    assert Bound("u", "upper", 2, True).judge(3) == VIOLATED
    assert Bound("l", "lower", 3, True).judge(3) == HOLDS
    assert Bound("l", "lower", 4, True).judge(3) == VIOLATED
    assert Bound("e", "equality", 4, True).judge(4) == HOLDS
    assert Bound("e", "equality", 4, True).judge(2) == VIOLATED
    assert Bound("u", "upper", 4, False).judge(5) == NOT_APPLICABLE


def test_noether_examples():
    R2 = ring("x,y")
    nc = noether_obstruction(polys(R2, "x^2", "y^2"))
    assert nc.applicable and nc.column_degrees == (2,) and nc.holds
    nc = noether_obstruction(polys(R2, "x", "y"))
    assert nc.product == 1 and nc.target == 1 and nc.holds
    R = ring()
    nc = noether_obstruction(polys(R, "x^2", "y^2", "z^2"))
    assert nc.column_degrees == (2, 2) and nc.product == 4 and nc.target == 4
    assert not noether_obstruction(polys(R, "x*y", "x*z", "y*z")).applicable


def test_noether_never_violated_on_integral_inputs():
    R = ring(p=32003)
    for forms in [("x^2", "y^2", "z^2"), ("x^2 + y*z", "y^2", "z^2 - x*y"),
                  ("x^3", "y^3 + x*z^2", "z^3"), ("x^2", "y^2 - x*z", "z^2 + x*y")]:
        nc = noether_obstruction(polys(R, *forms))
        assert nc.applicable
        assert nc.holds


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(1, 5), min_size=2, max_size=5), st.integers(1, 3), st.integers(0, 3))
def test_improved_bound_never_exceeds_linear_rank_bound(degs, e, s):
    degrees = tuple(sorted(degs, reverse=True))
    t = min(len(degrees), 3)
    ctx = _ctx(n=t, m=len(degrees) - 1, t=t, e=e, degrees=degrees, s=s, improved_side=True)
    b = _by_name(upper_bounds(ctx))
    if s <= t - 1:
        assert b["linear-rank-improved"].value <= b["linear-rank"].value
        assert b["linear-rank"].value <= prod(degrees[:t]) * e
    if s == 0:
        assert b["linear-rank-improved"].value == b["syzygy-product"].value
