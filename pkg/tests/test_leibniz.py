from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from dirackit import leibniz as lz
from dirackit.errors import PreconditionError
from oracles import sl2_matrices as om


def test_sl2_constants_match_matrices():
    A = lz.sl2()
    got = [[list(A.bracket(A.basis(i), A.basis(j))) for j in range(3)] for i in range(3)]
    assert got == om.structure_constants()
    assert lz.check_lie(A)


def test_lie_algebra_validates_on_construction():
    with pytest.raises(PreconditionError):
        lz.FiniteLieAlgebra.from_triples(("a", "b"), [(0, 1, 0, 1), (0, 0, 1, 1)])


def test_leibniz_with_bad_constant_is_caught():
    A = lz.hemisemidirect(lz.sl2(), lz.adjoint_module(lz.sl2())).a
    assert lz.check_leibniz(A)
    broken = A.with_constant(0, 1, 2, 2)
    assert not lz.check_leibniz(broken)


def test_hemisemidirect_sl2():
    g = lz.sl2()
    ca = lz.hemisemidirect(g, lz.adjoint_module(g))
    A = ca.a
    assert A.dim == 6
    assert lz.check_leibniz(A)
    assert not lz.check_antisymmetry(A)
    assert len(om.leibniz_failures()) == 0
    Q, proj = lz.squares_ideal_quotient(A)
    assert Q.dim == 6 - om.squares_span_dim() == 3
    assert lz.check_lie(Q)
    assert lz.check_morphism(proj)


def test_hemisemidirect_bracket_formula():
    g = lz.sl2()
    A = lz.hemisemidirect(g, lz.adjoint_module(g)).a
    e, f = A.basis(0), A.basis(1)
    e_, f_ = A.basis(3), A.basis(4)
    # ((e, 0), (0, f')) -> (0, [e, f]) = (0, h')
    assert A.bracket(e, f_) == A.basis(5)
    # ((0, e'), anything) -> 0
    assert not any(A.bracket(e_, f))
    assert A.bracket(e, f) == A.basis(2)


def test_courant_algebra_is_exact_and_recovers_module():
    g = lz.sl2()
    ad = lz.adjoint_module(g)
    ca = lz.hemisemidirect(g, ad)
    rep = lz.check_courant_algebra(ca)
    assert rep.ok
    assert rep.data["exact"]
    assert lz.induced_module_action(ca).action == ad.action
    assert ca.pi_bar(ca.a.basis(1)) == (0, 0, 0, 0, 1, 0)


def test_squares_ideal_of_a_lie_algebra_is_zero():
    basis, pivots = lz.squares_ideal(lz.heisenberg())
    assert basis == [] and pivots == []


def test_squares_ideal_of_the_hemisemidirect_product():
    g = lz.sl2()
    basis, pivots = lz.squares_ideal(lz.hemisemidirect(g, lz.adjoint_module(g)).a)
    assert len(basis) == 3
    assert pivots == [3, 4, 5]


def test_leibniz_from_equivariant_map():
    g = lz.heisenberg()
    ad = lz.adjoint_module(g)
    mu = lz.LinearMap.from_matrix(ad, g, [[-1, 0, 0], [0, -1, 0], [2, 3, 1]])
    A = lz.leibniz_from_equivariant(ad, mu)
    assert lz.check_leibniz(A)
    assert lz.check_morphism(lz.LinearMap(A, g, mu.images))


def test_leibniz_from_equivariant_rejects_non_equivariant_map():
    g = lz.sl2()
    ad = lz.adjoint_module(g)
    minus_id = lz.LinearMap.from_matrix(ad, g, [[-1, 0, 0], [0, -1, 0], [0, 0, -1]])
    with pytest.raises(PreconditionError):
        lz.leibniz_from_equivariant(ad, minus_id)


def test_module_axiom_is_checked():
    g = lz.sl2()
    ad = lz.adjoint_module(g)
    t = [[list(r) for r in p] for p in ad.action]
    t[0][1][2] = Fraction(5)
    with pytest.raises(PreconditionError):
        lz.GModule(g, ad.basis_names, t)
    assert not lz.check_module(lz.GModule(g, ad.basis_names, t, check=False))


def test_linear_map_kernel_and_rank():
    g = lz.sl2()
    ca = lz.hemisemidirect(g, lz.trivial_module(g, ("u",)))
    assert ca.pi.rank() == 3
    assert ca.kernel == [(0, 0, 0, 1)]


def test_abelian():
    A = lz.abelian(3)
    assert lz.check_lie(A)
    assert not any(A.bracket(A.basis(0), A.basis(1)))


small = st.integers(min_value=-3, max_value=3)


@given(st.lists(small, min_size=9, max_size=9))
def test_change_of_basis_preserves_lie(entries):
    """Transport sl2 along a random invertible matrix: still a Lie algebra."""
    M = sp.Matrix(3, 3, entries)
    if M.det() == 0:
        M = M + sp.eye(3) * (abs(M.det()) + 7)
    if M.det() == 0:
        return
    Minv = M.inv()
    A = lz.sl2()
    triples = []
    for i in range(3):
        for j in range(3):
            # new basis b_i = sum_a M[a, i] e_a
            bi = [M[a, i] for a in range(3)]
            bj = [M[a, j] for a in range(3)]
            br = A.bracket([Fraction(int(x.p), int(x.q)) for x in map(sp.Rational, bi)],
                           [Fraction(int(x.p), int(x.q)) for x in map(sp.Rational, bj)])
            new = Minv * sp.Matrix([sp.Rational(c.numerator, c.denominator) for c in br])
            for k in range(3):
                if new[k]:
                    triples.append((i, j, k, Fraction(int(new[k].p), int(new[k].q))))
    B = lz.FiniteLeibnizAlgebra.from_triples(("b0", "b1", "b2"), triples)
    assert lz.check_lie(B)


@given(st.lists(st.lists(small, min_size=6, max_size=6), min_size=2, max_size=2))
def test_hemisemidirect_left_multiplication_is_a_derivation(vs):
    g = lz.sl2()
    A = lz.hemisemidirect(g, lz.adjoint_module(g)).a
    u, v = ([Fraction(c) for c in w] for w in vs)
    w = A.basis(4)
    lhs = A.bracket(u, A.bracket(v, w))
    rhs = lz.vadd(A.bracket(A.bracket(u, v), w), A.bracket(v, A.bracket(u, w)))
    assert lhs == rhs
