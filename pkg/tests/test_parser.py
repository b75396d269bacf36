import pytest
from hypothesis import given

from conftest import rng_for, seeds
from dirackit.errors import ParseError
from dirackit.exterior import DifferentialForm, VectorField
from dirackit.parsing import parse_expression, parse_form, parse_rational, parse_scalar, parse_vector
from dirackit.randgen import random_form, random_vector
from dirackit.scalar import Patch


@pytest.mark.parametrize("text, offset", [
    ("x + y +", 7),
    ("x**2", 2),
    ("(x", 2),
    ("q", 0),
    ("x + ∂y", 4),
    ("dx + @x", 3),
    ("dx^2", 2),
])
def test_errors_carry_byte_offsets(r2, text, offset):
    with pytest.raises(ParseError) as info:
        parse_expression(r2, text)
    assert info.value.offset == offset
    assert f"at byte {offset}" in str(info.value)


def test_offset_points_at_the_offending_bytes(r2):
    text = "x + ∂y"
    with pytest.raises(ParseError) as info:
        parse_expression(r2, text)
    assert text.encode()[info.value.offset:].startswith("∂".encode())


def test_kinds(r2):
    assert isinstance(parse_expression(r2, "x*@x + y*@y"), VectorField)
    assert isinstance(parse_expression(r2, "x*dx^dy"), DifferentialForm)
    assert parse_scalar(r2, "2^3*x") == parse_scalar(r2, "8*x")


def test_wedge_and_sign(r2):
    assert parse_form(r2, "dy^dx") == -parse_form(r2, "dx^dy")
    assert parse_form(r2, "dx^dx", 2).is_zero()
    assert parse_form(r2, "(dx + dy)^(x*dy)") == parse_form(r2, "x*dx^dy")


def test_degree_checks(r2):
    assert parse_form(r2, "0", 2).degree == 2
    with pytest.raises(ParseError):
        parse_form(r2, "dx", 2)
    with pytest.raises(ParseError):
        parse_vector(r2, "dx")
    with pytest.raises(ParseError):
        parse_scalar(r2, "@x")


def test_environment_names(r2):
    env = {"phi": parse_scalar(r2, "1 + x^2"), "w": parse_form(r2, "dx^dy")}
    assert parse_form(r2, "phi*w", env=env) == parse_form(r2, "(1 + x^2)*dx^dy")


def test_rationals():
    assert str(parse_rational("-3/4")) == "-3/4"
    assert parse_rational(2) == 2
    with pytest.raises(ParseError):
        parse_rational("1/0")


@given(seeds)
def test_form_and_vector_round_trip(seed):
    P = Patch(("x", "y", "z"))
    rng = rng_for(seed)
    for k in range(4):
        w = random_form(rng, P, k)
        assert parse_form(P, str(w), k) == w
    X = random_vector(rng, P)
    assert parse_vector(P, str(X)) == X
