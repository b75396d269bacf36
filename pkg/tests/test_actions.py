import pytest

from dirackit import leibniz as lz
from dirackit.actions import (ExtendedAction, InfinitesimalAction, MomentMap, build_twisted_extension,
                              check_compatible, check_dirac_action, check_extension, check_action_equivariance,
                              check_moment_map, diagonal_extension, pi_mu, potential, symplectic_extension)
from dirackit.courant import GeneralizedSection, Twist
from dirackit.dirac import graph_of_two_form
from dirackit.errors import PreconditionError
from dirackit.exterior import exterior_derivative, interior_product
from dirackit.parsing import parse_form, parse_scalar, parse_vector
from dirackit.scalar import Patch

P2 = Patch(("x", "y"))
P4 = Patch(("x1", "y1", "x2", "y2"))
G1 = lz.abelian(1, ("e",))
H4 = parse_form(P4, "(1 + x1^2)*(dx1^dy1 + dx2^dy2)")
L4 = graph_of_two_form(H4, Twist(exterior_derivative(H4)), label="L")


def psi(P, *fields, g=G1):
    return InfinitesimalAction(g, tuple(parse_vector(P, f) for f in fields))


def sec(P, v, f):
    return GeneralizedSection(parse_vector(P, v), parse_form(P, f, 1))


def test_infinitesimal_action_must_be_a_morphism():
    g = lz.heisenberg()
    with pytest.raises(PreconditionError):
        InfinitesimalAction(g, tuple(parse_vector(P2, f) for f in ("@x", "x*@y", "0")))
    assert InfinitesimalAction(g, tuple(parse_vector(P2, f) for f in ("@x", "x*@y", "@y")))


def test_symplectic_extension_on_the_plane():
    ea = symplectic_extension(psi(P2, "@x"), parse_form(P2, "dx^dy"))
    assert check_extension(ea).ok
    assert ea.rho[1] == sec(P2, "0", "dy")
    assert check_action_equivariance(ea).ok


def test_symplectic_extension_preconditions():
    with pytest.raises(PreconditionError):
        symplectic_extension(psi(P4, "@y1"), parse_form(P4, "x1*dx2^dy2"))
    with pytest.raises(PreconditionError):
        symplectic_extension(psi(P2, "x*@x"), parse_form(P2, "dx^dy"))


def test_twisted_extension_on_r4():
    mu = [parse_scalar(P4, "-(x1 + x1^3/3)")]
    ea = build_twisted_extension(psi(P4, "@y1"), H4, mu_eq=mu)
    rep = check_extension(ea)
    assert rep.ok, str(rep)
    assert ea.rho[0] == sec(P4, "@y1", "-(1 + x1^2)*dx1")
    assert ea.rho[1] == sec(P4, "0", "-(1 + x1^2)*dx1")
    assert check_moment_map(ea, MomentMap(tuple(mu))).ok


def test_twisted_extension_needs_invariant_h():
    with pytest.raises(PreconditionError):
        build_twisted_extension(psi(P4, "@x1"), H4)


def test_twisted_extension_needs_equivariant_mu():
    g = lz.heisenberg()
    ps = InfinitesimalAction(g, tuple(parse_vector(P2, f) for f in ("@x", "x*@y", "@y")))
    mu = [parse_scalar(P2, t) for t in ("x", "0", "0")]
    with pytest.raises(PreconditionError):
        build_twisted_extension(ps, parse_form(P2, "0", 2), mu_eq=mu)


def test_non_closed_alpha_flips_admissibility():
    ea = symplectic_extension(psi(P2, "@x"), parse_form(P2, "dx^dy"))
    bad = ea.with_rho([ea.rho[0], sec(P2, "0", "x*dy")])
    rep = check_extension(bad)
    assert not rep["admissible_image"]
    assert "nu_closed" in rep.failed()


def test_non_invariant_h_flips_admissibility():
    h = parse_form(P4, "(1 + y1^2)*(dx1^dy1 + dx2^dy2)")
    X = parse_vector(P4, "@y1")
    ea = ExtendedAction(lz.hemisemidirect(G1, lz.adjoint_module(G1)), psi(P4, "@y1"),
                        (GeneralizedSection(X, interior_product(X, h)), sec(P4, "0", "0")),
                        Twist(exterior_derivative(h)))
    rep = check_extension(ea)
    assert not rep["admissible_image"]


def test_dirac_action_and_pi_mu_on_r4():
    ea = diagonal_extension(psi(P4, "@y1"), H4)
    assert check_dirac_action(ea, L4).ok
    mm = MomentMap((parse_scalar(P4, "-(x1 + x1^3/3)"),))
    assert check_compatible(ea, mm).ok
    rep = pi_mu(ea, mm, L4)
    assert rep.ok, str(rep)
    assert rep.data["constants_of_motion"]
    assert rep.data["image"] == {"e": "-1/3*x1^3 - x1", "e'": "0"}


def test_twisted_action_is_not_a_dirac_action():
    mu = [parse_scalar(P4, "-(x1 + x1^3/3)")]
    ea = build_twisted_extension(psi(P4, "@y1"), H4, mu_eq=mu)
    rep = check_dirac_action(ea, L4)
    assert rep.failed() == ["image_in_structure"]


def test_dirac_action_twist_mismatch():
    ea = diagonal_extension(psi(P4, "@y1"), H4)
    with pytest.raises(PreconditionError):
        check_dirac_action(ea, graph_of_two_form(H4))


def test_moment_map_failure_reports_both_sides():
    G = graph_of_two_form(parse_form(P2, "dx^dy"))
    ea = symplectic_extension(psi(P2, "@x"), parse_form(P2, "dx^dy"))
    rep = check_moment_map(ea, MomentMap((parse_scalar(P2, "x"),)))
    assert rep["nu_equals_dmu"].detail == "nu = dy, d mu = dx"
    good = MomentMap((parse_scalar(P2, "y"),))
    assert check_moment_map(ea, good).ok
    ed = diagonal_extension(psi(P2, "@x"), parse_form(P2, "dx^dy"))
    assert pi_mu(ed, good, G).ok


def test_potential():
    alpha = parse_form(P4, "-(1 + x1^2)*dx1")
    assert potential(alpha) == parse_scalar(P4, "-x1 - x1^3/3")
    with pytest.raises(PreconditionError):
        potential(parse_form(P4, "x2*dx1"))
