"""Seeded random polynomial data for property checks."""
from __future__ import annotations

import random
from itertools import combinations

from .courant import GeneralizedSection, Twist
from .exterior import DifferentialForm, VectorField, exterior_derivative
from .scalar import Patch, ScalarField


def random_polynomial(rng: random.Random, patch: Patch, max_degree: int = 2, max_terms: int = 3,
                      coeff: int = 3) -> ScalarField:
    f = patch.zero
    xs = patch.coordinates()
    for _ in range(rng.randint(0, max_terms)):
        c = rng.randint(-coeff, coeff)
        if not c:
            continue
        term = patch.const(c)
        for _ in range(rng.randint(0, max_degree)):
            term = term * rng.choice(xs)
        f = f + term
    return f


def random_vector(rng, patch, max_degree=2, density=0.6) -> VectorField:
    return VectorField(patch, [random_polynomial(rng, patch, max_degree) if rng.random() < density
                               else patch.zero for _ in range(patch.dim)])


def random_form(rng, patch, degree, max_degree=2, density=0.5) -> DifferentialForm:
    if degree == 0:
        return DifferentialForm.function(random_polynomial(rng, patch, max_degree))
    coeffs = {key: random_polynomial(rng, patch, max_degree)
              for key in combinations(range(patch.dim), degree) if rng.random() < density}
    return DifferentialForm(patch, degree, coeffs)


def random_constant_form(rng, patch, degree, coeff=2) -> DifferentialForm:
    coeffs = {key: rng.randint(-coeff, coeff) for key in combinations(range(patch.dim), degree)}
    return DifferentialForm(patch, degree, coeffs)


def random_closed_form(rng, patch, degree, max_degree=2) -> DifferentialForm:
    """dB plus a constant-coefficient form: closed by construction."""
    exact = exterior_derivative(random_form(rng, patch, degree - 1, max_degree))
    return exact + random_constant_form(rng, patch, degree)


def random_twist(rng, patch, order=1, max_degree=2) -> Twist:
    return Twist(random_closed_form(rng, patch, order + 2, max_degree))


def random_section(rng, patch, order=1, max_degree=2) -> GeneralizedSection:
    return GeneralizedSection(random_vector(rng, patch, max_degree), random_form(rng, patch, order, max_degree))
