import pytest

from polyfunctor import GradedRing, ParseError, parse_polynomial
from polyfunctor.parsing import parse_coords, parse_matrix, polynomial_variable_names

from conftest import F5, Q


def test_parse_basic_terms():
    ring = GradedRing(Q, ["x11", "x12", "x21", "x22"])
    f = parse_polynomial("x11*x22 - x12*x21", ring)
    assert len(f.terms) == 2


def test_parse_powers_and_fractions():
    ring = GradedRing(Q, ["x", "y"])
    f = parse_polynomial("3/2*x^3 - y + 4", ring)
    assert f.to_text() == "3/2*x^3 - y + 4"
    assert parse_polynomial(f.to_text(), ring) == f


def test_parse_parentheses():
    ring = GradedRing(Q, ["x", "y"])
    assert parse_polynomial("(x + y)^2", ring) == parse_polynomial("x^2 + 2*x*y + y^2", ring)


def test_parse_unary_minus():
    ring = GradedRing(Q, ["x"])
    assert parse_polynomial("-x + 1", ring) == ring.one() - ring.var("x")


def test_parse_error_carries_position():
    ring = GradedRing(Q, ["x"])
    with pytest.raises(ParseError) as err:
        parse_polynomial("x + @", ring)
    assert err.value.position == 4
    with pytest.raises(ParseError) as err:
        parse_polynomial("x + w", ring)
    assert err.value.position == 4


def test_variable_name_inference():
    assert polynomial_variable_names("y^25*z^2 + x^10*y^25*z") == ("x", "y", "z")


def test_parse_matrix_and_coords():
    rows = parse_matrix("1,2;3,4", F5)
    assert [[int(e.value) for e in row] for row in rows] == [[1, 2], [3, 4]]
    coords = parse_coords("1,-1,2", Q)
    assert [c.value for c in coords] == [1, -1, 2]
    with pytest.raises(ParseError):
        parse_matrix("1,2;3", F5)


def test_prime_field_printing_round_trip():
    ring = GradedRing(F5, ["a", "b"])
    f = parse_polynomial("-a + 7*b", ring)
    # canonical residues, no negative signs
    assert f.to_text() == "4*a + 2*b"
    assert parse_polynomial(f.to_text(), ring) == f
