from fractions import Fraction

import pytest
from hypothesis import given

from conftest import rng_for, seeds
from dirackit.errors import SingularPointError
from dirackit.parsing import parse_scalar
from dirackit.randgen import random_polynomial
from dirackit.scalar import Patch, antiderivative_polynomial


def test_canonical_form_cancels_common_factors(r3):
    f = parse_scalar(r3, "(x^2 - 1)/(x - 1)")
    assert f == parse_scalar(r3, "x + 1")
    assert f.is_polynomial()
    assert str(f) == "x + 1"


def test_denominator_is_monic(r3):
    f = parse_scalar(r3, "1/(2*x + 2)")
    assert f == parse_scalar(r3, "(1/2)/(x + 1)")
    assert str(f.den.as_expr()) == "x + 1"


def test_eval_at_exact_and_singular(r3):
    f = parse_scalar(r3, "1/(2*x + 2)")
    assert f.eval_at(r3.point(1, 0, 0)) == Fraction(1, 4)
    with pytest.raises(SingularPointError):
        f.eval_at(r3.point(-1, 5, 0))


def test_constants_and_zero(r3):
    assert not r3.zero
    assert r3.one.is_constant()
    assert r3.const(Fraction(3, 2)).constant_value() == Fraction(3, 2)
    assert (r3.coordinate(0) - r3.coordinate(0)).is_zero()


def test_division_by_zero_raises(r3):
    with pytest.raises(ZeroDivisionError):
        r3.one / r3.zero


def test_patch_rejects_bad_names():
    with pytest.raises(ValueError):
        Patch(("x", "x"))
    with pytest.raises(ValueError):
        Patch(("1x",))


def test_antiderivative(r3):
    f = parse_scalar(r3, "x*y + 3*x^2")
    F = antiderivative_polynomial(f, 0)
    assert F.diff(0) == f
    assert F == parse_scalar(r3, "1/2*x^2*y + x^3")


@given(seeds)
def test_field_axioms(seed):
    P = Patch(("x", "y", "z"))
    rng = rng_for(seed)
    a, b, c = (random_polynomial(rng, P) for _ in range(3))
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if b:
        assert (a / b) * b == a


@given(seeds)
def test_derivative_is_a_derivation(seed):
    P = Patch(("x", "y"))
    rng = rng_for(seed)
    a, b = random_polynomial(rng, P), random_polynomial(rng, P)
    b = b or P.one
    for i in range(2):
        assert (a * b).diff(i) == a.diff(i) * b + a * b.diff(i)
        assert (a / b).diff(i) == (a.diff(i) * b - a * b.diff(i)) / (b * b)


@given(seeds)
def test_print_parse_round_trip(seed):
    P = Patch(("x", "y"))
    rng = rng_for(seed)
    a, b = random_polynomial(rng, P), random_polynomial(rng, P)
    f = a / b if b else a
    assert parse_scalar(P, str(f)) == f
