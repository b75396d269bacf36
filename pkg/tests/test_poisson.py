import pytest
import sympy as sp
from hypothesis import given

from conftest import rng_for, seeds
from dirackit.courant import GeneralizedSection, Twist
from dirackit.dirac import DiracStructure, graph_of_two_form
from dirackit.errors import PreconditionError
from dirackit.exterior import exterior_derivative
from dirackit.parsing import parse_form, parse_scalar, parse_vector
from dirackit.poisson import (admissibility, admissible_bracket_identity, hamiltonian_fields, is_H_admissible,
                              jacobiator, poisson_bracket, verify_poisson_algebra)
from dirackit.randgen import random_polynomial
from dirackit.scalar import Patch
from oracles import calculus as oc

P4 = Patch(("x1", "y1", "x2", "y2"))
OMEGA = parse_form(P4, "dx1^dy1 + dx2^dy2")
PHI = parse_scalar(P4, "1 + x1^2")
H_TWISTED = OMEGA * PHI
L_TWISTED = graph_of_two_form(H_TWISTED, Twist(exterior_derivative(H_TWISTED)))


def fs(P, *texts):
    return [parse_scalar(P, t) for t in texts]


def test_sign_convention_on_the_plane(r2):
    D = graph_of_two_form(parse_form(r2, "dx^dy"))
    x, y = fs(r2, "x", "y")
    assert hamiltonian_fields(D, x).particular == parse_vector(r2, "-@y")
    assert poisson_bracket(D, x, y) == -r2.one


def test_admissibility_on_the_twisted_graph():
    verdicts = [bool(admissibility(L_TWISTED, f)) for f in fs(P4, "x1", "x2", "y1", "1 + x1^2")]
    assert verdicts == [True, False, False, True]


def test_hamiltonian_field_and_witness():
    x2 = parse_scalar(P4, "x2")
    sol = hamiltonian_fields(L_TWISTED, x2)
    assert sol.particular == parse_vector(P4, "-1/(x1^2 + 1)*@y2")
    assert sol.homogeneous_basis == ()
    v = admissibility(L_TWISTED, x2)
    assert not v
    assert str(v.witness["i_X H"]) == "-2*x1/(x1^2 + 1)*dx1^dx2"


def test_generic_locus_of_hamiltonian_fields(r2):
    D = graph_of_two_form(parse_form(r2, "x*dx^dy"))
    sol = hamiltonian_fields(D, parse_scalar(r2, "y"))
    assert sol.particular == parse_vector(r2, "1/x*@x")
    assert [str(p) for p in sol.locus] == ["x"]


def partial_structure(P):
    gens = [("@x1", "dy1"), ("@y1", "-dx1"), ("@x2", "0"), ("@y2", "0")]
    return DiracStructure(Twist.zero(P), tuple(GeneralizedSection(parse_vector(P, a), parse_form(P, b, 1))
                                               for a, b in gens))


def test_homogeneous_solutions():
    D = partial_structure(P4)
    sol = hamiltonian_fields(D, parse_scalar(P4, "x1*y1"))
    assert sol.particular == parse_vector(P4, "x1*@x1 - y1*@y1")
    assert len(sol.homogeneous_basis) == 2
    assert hamiltonian_fields(D, parse_scalar(P4, "x2")) is None


def test_bracket_independent_of_field_choice():
    D = partial_structure(P4)
    f, g = fs(P4, "x1*y1", "x1^2 + y1")
    sol = hamiltonian_fields(D, f)
    values = {sol.field([c, -c + 1])(g) for c in fs(P4, "0", "1", "x2", "y2*x1", "1/(1 + x2^2)")}
    assert len(values) == 1


def test_is_H_admissible_picks_a_field_killing_the_twist(r3):
    H = Twist(parse_form(r3, "dx^dy^dz"))
    gens = [("@x", "0"), ("@y", "0"), ("@z", "0")]
    D = DiracStructure(H, tuple(GeneralizedSection(parse_vector(r3, a), parse_form(r3, b, 1)) for a, b in gens))
    # every vector field is Hamiltonian for a constant; only X = 0 kills a volume-form twist
    af = is_H_admissible(D, r3.one)
    assert af is not None and af.chosen_field.is_zero()
    assert is_H_admissible(D, parse_scalar(r3, "x")) is None


def test_poisson_suite_on_the_twisted_graph():
    rep = verify_poisson_algebra(L_TWISTED, fs(P4, "x1", "1 + x1^2", "x1^3", "x1^2 - 3*x1", "1/(1 + x1^2)"))
    assert rep.ok, str(rep)


def test_poisson_suite_needs_three_functions(r2):
    D = graph_of_two_form(parse_form(r2, "dx^dy"))
    with pytest.raises(ValueError):
        verify_poisson_algebra(D, fs(r2, "x", "y"))


def test_poisson_suite_rejects_non_admissible_input():
    with pytest.raises(PreconditionError):
        verify_poisson_algebra(L_TWISTED, fs(P4, "x1", "x2", "x1^2"))


def test_bracket_identity_and_negative_control():
    x1, sq, x2, prod = fs(P4, "x1", "1 + x1^2", "x2", "x1*y1")
    assert admissible_bracket_identity(L_TWISTED, x1, sq).ok
    bad = admissible_bracket_identity(L_TWISTED, x2, prod)
    assert bad.failed() == ["dorfman_restriction", "commutator_annihilates_twist", "hamiltonian_of_bracket"]
    assert str(bad["commutator_annihilates_twist"].witness) == "-4*x1^3/(x1^6 + 3*x1^4 + 3*x1^2 + 1)*dx1^dx2"


def test_jacobiator_values():
    cyc, hv = jacobiator(L_TWISTED, *fs(P4, "x2", "y2", "x1*y1"))
    expected = parse_scalar(P4, "2*x1^2/(x1^2 + 1)^3")
    assert cyc == hv == expected
    assert jacobiator(L_TWISTED, *fs(P4, "x1", "x1^2", "x1^3")) == (P4.zero, P4.zero)


def test_jacobiator_needs_unique_fields():
    with pytest.raises(PreconditionError):
        jacobiator(partial_structure(P4), *fs(P4, "x1", "y1", "x1*y1"))


@given(seeds)
def test_graph_hamiltonian_fields_match_oracle(seed):
    rng = rng_for(seed)
    xs = oc.patch_symbols(P4)
    f, g = random_polynomial(rng, P4), random_polynomial(rng, P4)
    got = oc.scalar_expr(hamiltonian_fields(L_TWISTED, f).particular(g))
    want = oc.graph_bracket(oc.form_dict(H_TWISTED), oc.scalar_expr(f), oc.scalar_expr(g), xs)
    assert sp.cancel(got - want) == 0


@given(seeds)
def test_untwisted_symplectic_graph_is_poisson(seed):
    rng = rng_for(seed)
    D = graph_of_two_form(OMEGA)
    triple = []
    while len(triple) < 3:
        f = random_polynomial(rng, P4)
        if not f.is_constant():
            triple.append(f)
    assert verify_poisson_algebra(D, triple).ok
