"""Exact symbolic checks for twisted Courant brackets, Dirac structures and Dirac actions.

All arithmetic happens in the field of rational functions over Q, so every
verdict is exact; generic verdicts come with the polynomial locus where a
pivot vanishes.
"""

__version__ = "0.1.0"

__all__ = [
    "CheckReport",
    "CourantAlgebraSpec",
    "DifferentialForm",
    "DiracKitError",
    "DiracStructure",
    "ExtendedAction",
    "FiniteLeibnizAlgebra",
    "FiniteLieAlgebra",
    "GModule",
    "GeneralizedSection",
    "InfinitesimalAction",
    "LinearMap",
    "MomentMap",
    "ParseError",
    "Patch",
    "PreconditionError",
    "ScalarField",
    "SingularPointError",
    "Twist",
    "VectorField",
    "Verdict",
    "admissibility",
    "admissibility_residual",
    "build_twisted_extension",
    "check_action_equivariance",
    "check_compatible",
    "check_courant_algebra",
    "check_dirac_action",
    "check_extension",
    "check_involutive",
    "check_isotropic",
    "check_leibniz",
    "check_maximal",
    "check_moment_map",
    "check_morphism",
    "cotangent_structure",
    "courant_bracket",
    "diagonal_extension",
    "dorfman",
    "evaluate",
    "exterior_derivative",
    "graph_of_bivector",
    "graph_of_two_form",
    "hamiltonian_fields",
    "hemisemidirect",
    "interior_product",
    "is_H_admissible",
    "is_admissible_pair",
    "jacobiator",
    "lie_bracket",
    "lie_derivative_form",
    "pairing",
    "parse_expression",
    "parse_form",
    "parse_scalar",
    "parse_vector",
    "pi_mu",
    "poisson_bracket",
    "squares_ideal_quotient",
    "symplectic_extension",
    "validate",
    "verify_poisson_algebra",
    "wedge",
]

from .actions import (ExtendedAction, InfinitesimalAction, MomentMap, build_twisted_extension,
                      check_compatible, check_dirac_action, check_extension, check_action_equivariance,
                      check_moment_map, diagonal_extension, pi_mu, symplectic_extension)
from .courant import (GeneralizedSection, Twist, admissibility_residual, courant_bracket, dorfman,
                      is_admissible_pair, pairing)
from .dirac import (DiracStructure, check_involutive, check_isotropic, check_maximal,
                    cotangent_structure, graph_of_bivector, graph_of_two_form, validate)
from .errors import DiracKitError, ParseError, PreconditionError, SingularPointError
from .exterior import (DifferentialForm, VectorField, evaluate, exterior_derivative,
                       interior_product, lie_bracket, lie_derivative_form, wedge)
from .leibniz import (CourantAlgebraSpec, FiniteLeibnizAlgebra, FiniteLieAlgebra, GModule,
                      LinearMap, check_courant_algebra, check_leibniz, check_morphism, hemisemidirect,
                      squares_ideal_quotient)
from .parsing import parse_expression, parse_form, parse_scalar, parse_vector
from .poisson import (admissibility, hamiltonian_fields, is_H_admissible, jacobiator,
                      poisson_bracket, verify_poisson_algebra)
from .report import CheckReport, Verdict
from .scalar import Patch, ScalarField
