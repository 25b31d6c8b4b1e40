import pytest

from rmdeg.heights import HeightSequenceError, generic_height_sequence
from rmdeg.ideal import Ideal
from rmdeg.monomial import (
    NotMonomialError,
    common_monomial_factor_degree,
    component_degree_check,
    delta_degree,
    intersection_delta_check,
    log_matrix,
    minimal_primes,
    monomial_birationality_check,
)

from _util import ideal, polys, ring


def test_height_sequence_of_variables():
    R = ring(p=32003)
    hs = generic_height_sequence(ideal(R, "x", "y", "z"), seed=1)
    assert hs.degrees == (1, 1, 1)
    assert hs.codims == (1, 2, 3)


def test_height_sequence_examples():
    R = ring(p=32003)
    a = ideal(R, "x^2", "y*z", "z^2")
    hs = generic_height_sequence(a, seed=3)
    assert hs.degrees == (2, 2)
    for i in range(len(hs.elements)):
        assert Ideal(R, hs.elements[: i + 1]).codim() == i + 1
        assert hs.elements[i] in a
    hs = generic_height_sequence(ideal(R, "x^2*y", "x*z^2", "y^2*z"), seed=5)
    assert hs.degrees == (3, 3)
    assert hs.codims == (1, 2)


def test_height_sequence_over_rationals():
    R = ring()
    hs = generic_height_sequence(ideal(R, "x^3", "y^2", "x*z"), seed=0)
    assert hs.degrees == (3, 2)
    assert hs.codims == (1, 2)


def test_height_sequence_rejects_excessive_height():
    R = ring(p=32003)
    with pytest.raises(HeightSequenceError):
        generic_height_sequence(ideal(R, "x*y"), height=2)


def test_minimal_primes_and_delta():
    R = ring()
    assert delta_degree(ideal(R, "x*y")) == 2
    assert minimal_primes(ideal(R, "x^2", "x*y")) == [frozenset({0})]
    assert delta_degree(ideal(R, "x^2", "x*y")) == 1
    assert delta_degree(ideal(R, "x*y", "x*z", "y*z")) == 3
    assert delta_degree(ideal(R, "x", "y", "z")) == 0
    with pytest.raises(NotMonomialError):
        delta_degree(ideal(R, "x + y"))


def test_intersection_delta_inequality():
    R = ring()
    chk = intersection_delta_check(ideal(R, "x"), [R.parse("y")])
    assert (chk.lhs, chk.rhs) == (1, 1) and chk.holds
    chk = intersection_delta_check(ideal(R, "x*y"), [R.parse("y*z"), R.parse("x*z")])
    assert chk.holds


def test_component_degree_inequality():
    R = ring()
    chk = component_degree_check(ideal(R, "x*y", "x*z", "y*z"), 2)
    assert chk.lhs == 3 and chk.rhs == 4 and chk.holds
    with pytest.raises(ValueError):
        component_degree_check(ideal(R, "x*y"), 2)


def test_birationality_examples():
    R = ring()
    chk = monomial_birationality_check(polys(R, "x^2", "y*z", "z^2"))
    assert chk.gcd == 4 and not chk.birational
    chk = monomial_birationality_check(polys(R, "x*y", "x*z", "y*z"))
    assert chk.gcd == 2 and chk.birational
    assert monomial_birationality_check(polys(R, "x", "y", "z")).birational
    with pytest.raises(NotMonomialError):
        monomial_birationality_check(polys(R, "x + y", "z"))


def test_log_matrix_and_common_factor():
    R = ring()
    assert log_matrix(polys(R, "x^2*y", "z^3")) == [[2, 1, 0], [0, 0, 3]]
    assert common_monomial_factor_degree(polys(R, "x^2*y", "x*z^2", "y^2*z")) == 1
    assert common_monomial_factor_degree(polys(R, "x^2", "y^2", "z^2")) == 0


def test_common_factor_of_general_forms():
    from rmdeg.report import common_factor_degree

    R = ring()
    f, g = polys(R, "(x + y)*(x - z)", "(x + y)*(y + 2*z)")
    assert common_factor_degree(f, g) == 1
    f, g = polys(R, "x^2 + y*z", "x*y")
    assert common_factor_degree(f, g) == 0
