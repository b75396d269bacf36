"""Extended actions of Courant algebras on T M + T*M, Dirac actions and moment maps."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .courant import (GeneralizedSection, Twist, adjoint_is_diagonal, dorfman,
                      is_admissible_pair)
from .dirac import DiracStructure, membership
from .errors import PreconditionError
from .exterior import (DifferentialForm, VectorField, exterior_derivative, function_differential,
                       interior_product, lie_bracket, lie_derivative_form)
from .leibniz import (CourantAlgebraSpec, FiniteLieAlgebra, GModule, adjoint_module,
                      check_courant_algebra, check_equivariant, hemisemidirect, induced_module_action)
from .poisson import is_H_admissible
from .report import CheckReport, Verdict
from .scalar import ScalarField, antiderivative_polynomial


def _combine(coeffs, objs, zero):
    out = zero
    for c, obj in zip(coeffs, objs):
        if c:
            out = out + obj * c
    return out


@dataclass(frozen=True)
class InfinitesimalAction:
    """psi: g -> vector fields, given on the basis of g."""

    g: FiniteLieAlgebra
    fields: tuple
    check: bool = True

    def __post_init__(self):
        fields = tuple(self.fields)
        object.__setattr__(self, "fields", fields)
        if len(fields) != self.g.dim:
            raise ValueError(f"need {self.g.dim} vector fields, got {len(fields)}")
        if len({X.patch for X in fields}) != 1:
            raise ValueError("vector fields live on different patches")
        if self.check:
            v = check_homomorphism(self)
            if not v:
                raise PreconditionError(f"psi is not a Lie algebra morphism: {v.detail}", witness=v.witness)

    @property
    def patch(self):
        return self.fields[0].patch

    def __call__(self, xi: Sequence) -> VectorField:
        return _combine(xi, self.fields, VectorField.zero(self.patch))


def check_homomorphism(psi: InfinitesimalAction) -> Verdict:
    """psi([xi, xi']) = [psi(xi), psi(xi')]."""
    g = psi.g
    for i, j in product(range(g.dim), repeat=2):
        lhs = psi(g.bracket(g.basis(i), g.basis(j)))
        rhs = lie_bracket(psi.fields[i], psi.fields[j])
        if lhs != rhs:
            nm = g.basis_names
            return Verdict(False, witness={"pair": (nm[i], nm[j]), "residual": lhs - rhs},
                           detail=f"psi([{nm[i]}, {nm[j]}]) - [psi, psi] = {lhs - rhs}")
    return Verdict(True)


@dataclass(frozen=True)
class ExtendedAction:
    """rho: a -> sections, on the basis of the Courant algebra ``ca``, over ``psi``."""

    ca: CourantAlgebraSpec
    psi: InfinitesimalAction
    rho: tuple
    twist: Twist
    label: str = ""

    def __post_init__(self):
        rho = tuple(self.rho)
        object.__setattr__(self, "rho", rho)
        if len(rho) != self.ca.a.dim:
            raise ValueError(f"need {self.ca.a.dim} sections, got {len(rho)}")
        if self.psi.g.dim != self.ca.g.dim:
            raise ValueError("psi is defined on a different Lie algebra")
        for s in rho:
            if s.patch != self.twist.patch or s.order != 1:
                raise ValueError("rho must take values in order-1 sections on the twist's patch")

    @property
    def patch(self):
        return self.twist.patch

    def __call__(self, a: Sequence) -> GeneralizedSection:
        return _combine(a, self.rho, GeneralizedSection.zero(self.patch, 1))

    def with_rho(self, rho) -> "ExtendedAction":
        return ExtendedAction(self.ca, self.psi, tuple(rho), self.twist, self.label)


@dataclass(frozen=True)
class MomentMap:
    """mu on the kernel basis of pi (``ca.kernel``)."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))

    def __call__(self, coords: Sequence) -> ScalarField:
        patch = self.values[0].patch
        return _combine(coords, self.values, patch.zero)


def _names(ea: ExtendedAction):
    return ea.ca.a.basis_names


def check_extension(ea: ExtendedAction) -> CheckReport:
    """Admissible image, bracket morphism into Dorfman, top square, and nu closed."""
    ca, H = ea.ca, ea.twist
    A = ca.a
    names = _names(ea)
    rep = CheckReport(f"extended action {ea.label}".strip())
    ca_rep = check_courant_algebra(ca)
    rep.add("courant_algebra", Verdict(ca_rep.ok, witness=None if ca_rep.ok else ca_rep.failed(),
                                       detail="exact" if ca_rep.data.get("exact") else "not exact"))

    wit = None
    for name, s in zip(names, ea.rho):
        v = is_admissible_pair(H, s)
        if not v:
            wit = {"a": name, "section": s, "residual": v.witness}
            break
    rep.add("admissible_image", Verdict(wit is None, witness=wit,
                                        detail="" if wit is None else f"d(alpha) + i_X H = {wit['residual']} at {wit['a']}"))

    wit = None
    for name, s in zip(names, ea.rho):
        v = adjoint_is_diagonal(H, s)
        if not v:
            wit = {"a": name, "off_diagonal": v.witness}
            break
    rep.add("diagonal_adjoint", Verdict(wit is None, witness=wit))

    wit = None
    for i, j in product(range(A.dim), repeat=2):
        lhs = ea(A.bracket(A.basis(i), A.basis(j)))
        rhs = dorfman(H, ea.rho[i], ea.rho[j])
        if lhs != rhs:
            wit = {"pair": (names[i], names[j]), "residual": lhs - rhs}
            break
    rep.add("bracket_morphism", Verdict(wit is None, witness=wit,
                                        detail="" if wit is None else f"rho([a,b]) != [rho a, rho b]_H on {wit['pair']}"))

    wit = None
    for i in range(A.dim):
        want = ea.psi(ca.pi(A.basis(i)))
        if ea.rho[i].vector != want:
            wit = {"a": names[i], "vector": ea.rho[i].vector, "psi(pi(a))": want}
            break
    rep.add("top_square", Verdict(wit is None, witness=wit))

    wit_v, wit_c = None, None
    for k in ca.kernel:
        s = ea(k)
        if s.vector and wit_v is None:
            wit_v = {"kernel_element": A.format_vector(k), "vector": s.vector}
        dnu = exterior_derivative(s.form)
        if dnu and wit_c is None:
            wit_c = {"kernel_element": A.format_vector(k), "d nu": dnu}
    rep.add("nu_vector_zero", Verdict(wit_v is None, witness=wit_v))
    rep.add("nu_closed", Verdict(wit_c is None, witness=wit_c))
    return rep


def symplectic_extension(psi: InfinitesimalAction, omega: DifferentialForm, label="") -> ExtendedAction:
    """rho(xi, eta) = (X_xi, i_{X_eta} omega) on g + g, untwisted."""
    if omega.degree != 2:
        raise ValueError("omega must be a 2-form")
    d_omega = exterior_derivative(omega)
    if d_omega:
        raise PreconditionError(f"omega is not closed: d omega = {d_omega}", witness=d_omega)
    g = psi.g
    alphas = []
    for name, X in zip(g.basis_names, psi.fields):
        alpha = interior_product(X, omega) if X else DifferentialForm.zero(omega.patch, 1)
        da = exterior_derivative(alpha)
        if da:
            raise PreconditionError(f"d(i_X omega) = {da} != 0 for {name}", witness={"xi": name, "d alpha": da})
        alphas.append(alpha)
    ca = hemisemidirect(g, adjoint_module(g))
    patch = omega.patch
    rho = [GeneralizedSection(X, DifferentialForm.zero(patch, 1)) for X in psi.fields]
    rho += [GeneralizedSection(VectorField.zero(patch), a) for a in alphas]
    return ExtendedAction(ca, psi, tuple(rho), Twist.zero(patch), label or "symplectic")


def build_twisted_extension(psi: InfinitesimalAction, h: DifferentialForm, module: Optional[GModule] = None,
                            mu_eq: Optional[Sequence[ScalarField]] = None, label="") -> ExtendedAction:
    """rho(xi, eta) = (X_xi, d mu(eta) + i_{X_xi} h) on g + module, twisted by H = dh."""
    g = psi.g
    module = module if module is not None else adjoint_module(g)
    patch = h.patch
    if mu_eq is None:
        mu_eq = [patch.zero] * module.dim
    mu_eq = [m if isinstance(m, ScalarField) else patch.const(m) for m in mu_eq]
    for name, X in zip(g.basis_names, psi.fields):
        Lh = lie_derivative_form(X, h)
        if Lh:
            raise PreconditionError(f"L_X h = {Lh} != 0 for {name}", witness={"xi": name, "L_X h": Lh})
    v = check_equivariant(module, lambda i, f: psi.fields[i](f), mu_eq)
    if not v:
        raise PreconditionError(f"mu is not equivariant: {v.detail}", witness=v.witness)
    ca = hemisemidirect(g, module)
    rho = [GeneralizedSection(X, interior_product(X, h)) for X in psi.fields]
    rho += [GeneralizedSection(VectorField.zero(patch), function_differential(m)) for m in mu_eq]
    return ExtendedAction(ca, psi, tuple(rho), Twist(exterior_derivative(h)), label or "twisted")


def diagonal_extension(psi: InfinitesimalAction, h: DifferentialForm, label="") -> ExtendedAction:
    """rho(xi, eta) = (X_xi, i_{X_xi} h): the kernel copy acts by zero."""
    return build_twisted_extension(psi, h, adjoint_module(psi.g), None, label or "diagonal")


def check_dirac_action(ea: ExtendedAction, D: DiracStructure) -> CheckReport:
    if ea.twist != D.twist:
        raise PreconditionError("the action and the Dirac structure carry different twists",
                                witness={"action": ea.twist.H, "structure": D.twist.H})
    names = _names(ea)
    rep = CheckReport(f"Dirac action {ea.label} on {D.label}".strip())
    wit = next(({"a": n, "section": s} for n, s in zip(names, ea.rho) if membership(D, s) is None), None)
    rep.add("image_in_structure", Verdict(wit is None, witness=wit, locus=D.elimination.locus,
                                          detail="" if wit is None else f"rho({wit['a']}) = {wit['section']} is outside"))
    wit = None
    for name, s in zip(names, ea.rho):
        for j, gen in enumerate(D.generators):
            b = dorfman(D.twist, s, gen)
            if membership(D, b) is None:
                wit = {"a": name, "generator": j, "bracket": b}
                break
        if wit:
            break
    rep.add("preserves_structure", Verdict(wit is None, witness=wit, locus=D.elimination.locus,
                                           detail="" if wit is None else
                                           f"[rho({wit['a']}), e{wit['generator']}]_H = {wit['bracket']} is outside"))
    wit = None
    for name, s in zip(names, ea.rho):
        L = lie_derivative_form(s.vector, D.twist.H)
        if L:
            wit = {"a": name, "L_X H": L}
            break
    rep.add("twist_symmetry", Verdict(wit is None, witness=wit))
    return rep


def check_action_equivariance(ea: ExtendedAction) -> CheckReport:
    """X_[a,b] = L_{X_a} X_b and alpha_[a,b] = L_{X_a} alpha_b on basis pairs."""
    A = ea.ca.a
    names = _names(ea)
    rep = CheckReport(f"equivariance of {ea.label}".strip())
    wv, wf = None, None
    for i, j in product(range(A.dim), repeat=2):
        lhs = ea(A.bracket(A.basis(i), A.basis(j)))
        Xa, Xb, ab = ea.rho[i].vector, ea.rho[j].vector, ea.rho[j].form
        if wv is None and lhs.vector != lie_bracket(Xa, Xb):
            wv = {"pair": (names[i], names[j]), "residual": lhs.vector - lie_bracket(Xa, Xb)}
        Lab = lie_derivative_form(Xa, ab)
        if wf is None and lhs.form != Lab:
            wf = {"pair": (names[i], names[j]), "residual": lhs.form - Lab}
    rep.add("vector_part", Verdict(wv is None, witness=wv))
    rep.add("form_part", Verdict(wf is None, witness=wf))
    return rep


def _kernel_coords(ca: CourantAlgebraSpec, v):
    coords = ca.kernel_coordinates(v)
    if coords is None:
        raise PreconditionError("element is not in the kernel of pi", witness=ca.a.format_vector(v))
    return coords


def check_moment_map(ea: ExtendedAction, mm: MomentMap) -> CheckReport:
    """nu = d mu, equivariance, and the squares of the three-row diagram."""
    ca = ea.ca
    A = ca.a
    K = ca.kernel
    if len(mm.values) != len(K):
        raise ValueError(f"moment map needs {len(K)} values, got {len(mm.values)}")
    rep = CheckReport(f"moment map for {ea.label}".strip())
    dmu = [function_differential(m) for m in mm.values]

    wit = None
    for k, m, dm in zip(K, mm.values, dmu):
        nu = ea(k).form
        if nu != dm:
            wit = {"eta": A.format_vector(k), "nu": nu, "d mu": dm}
            break
    rep.add("nu_equals_dmu", Verdict(wit is None, witness=wit,
                                     detail="" if wit is None else f"nu = {wit['nu']}, d mu = {wit['d mu']}"))

    action = induced_module_action(ca)
    wit = None
    for i, j in product(range(ca.g.dim), range(len(K))):
        coords = action.act(ca.g.basis(i), action.basis(j))
        lhs = function_differential(mm(coords))
        rhs = lie_derivative_form(ea.psi.fields[i], dmu[j])
        if lhs != rhs:
            wit = {"xi": ca.g.basis_names[i], "eta": A.format_vector(K[j]), "residual": lhs - rhs}
            break
    rep.add("equivariance", Verdict(wit is None, witness=wit))

    # order-0 row: rho0(eta) = (0, mu(eta)) on the kernel; d maps it to the order-1 row
    wit = None
    for k, m in zip(K, mm.values):
        rho0 = GeneralizedSection.of(VectorField.zero(ea.patch), m)
        lifted = GeneralizedSection(rho0.vector, exterior_derivative(rho0.form))
        if lifted != ea(k):
            wit = {"eta": A.format_vector(k), "d rho0": lifted, "rho": ea(k)}
            break
    rep.add("diagram_kernel_square", Verdict(wit is None, witness=wit))

    wit = None
    for i in range(A.dim):
        want = ea.psi(ca.pi(A.basis(i)))
        if ea.rho[i].vector != want:
            wit = {"a": A.basis_names[i], "vector": ea.rho[i].vector, "psi(pi(a))": want}
            break
    rep.add("diagram_projections", Verdict(wit is None, witness=wit))
    return rep


def _pi_bar_function(ea: ExtendedAction, mm: MomentMap, i: int) -> ScalarField:
    """mu(pi_bar(e_i)), pi_bar(xi, eta) = (0, xi)."""
    coords = _kernel_coords(ea.ca, ea.ca.pi_bar(ea.ca.a.basis(i)))
    return mm(coords)


def check_compatible(ea: ExtendedAction, mm: MomentMap) -> CheckReport:
    """alpha_a = d mu_{pi_bar(a)} on every basis element of g + g."""
    rep = CheckReport(f"compatibility of {ea.label}".strip())
    wit = None
    for i, name in enumerate(_names(ea)):
        dm = function_differential(_pi_bar_function(ea, mm, i))
        if ea.rho[i].form != dm:
            wit = {"a": name, "alpha": ea.rho[i].form, "d mu": dm}
            break
    rep.add("alpha_equals_dmu", Verdict(wit is None, witness=wit,
                                        detail="" if wit is None else f"alpha = {wit['alpha']}, d mu = {wit['d mu']}"))
    return rep


def pi_mu(ea: ExtendedAction, mm: MomentMap, D: DiracStructure) -> CheckReport:
    """Pi_mu(a) = mu_{pi_bar(a)} into the Poisson algebra of admissible functions."""
    A = ea.ca.a
    names = _names(ea)
    rep = CheckReport(f"Pi_mu for {ea.label}".strip())
    dirac = check_dirac_action(ea, D)
    compat = check_compatible(ea, mm)
    failed = [f"dirac_action.{n}" for n in dirac.failed()] + [f"compatible.{n}" for n in compat.failed()]
    rep.add("prerequisites", Verdict(not failed, witness=failed or None,
                                     detail="Dirac action with compatible moment map" if not failed
                                     else f"unmet: {', '.join(failed)}"))
    try:
        rep.data["moment_map_conditions"] = check_moment_map(ea, mm).ok
    except PreconditionError as exc:
        rep.data["moment_map_conditions"] = f"not applicable: {exc}"
    if failed:
        return rep

    image = [_pi_bar_function(ea, mm, i) for i in range(A.dim)]
    rep.data["image"] = {n: str(f) for n, f in zip(names, image)}
    adm = [is_H_admissible(D, f) for f in image]
    bad = [n for n, a in zip(names, adm) if a is None]
    rep.add("admissible_image", Verdict(not bad, witness=bad or None,
                                        detail="" if not bad else f"not H-admissible: {', '.join(bad)}"))
    if bad:
        return rep

    table = [[adm[i].chosen_field(image[j]) for j in range(A.dim)] for i in range(A.dim)]
    rep.data["bracket_table"] = [[str(x) for x in row] for row in table]
    wit = None
    for i, j in product(range(A.dim), repeat=2):
        lhs = _combine(A.bracket(A.basis(i), A.basis(j)), image, ea.patch.zero)
        if lhs != table[i][j]:
            wit = {"pair": (names[i], names[j]), "Pi([a,b])": lhs, "{Pi a, Pi b}": table[i][j]}
            break
    rep.add("leibniz_morphism", Verdict(wit is None, witness=wit))

    wit = None
    for i, name in enumerate(names):
        Xa = ea.rho[i].vector
        if membership(D, GeneralizedSection(Xa, function_differential(image[i]))) is None:
            wit = {"a": name, "reason": "(X_a, d Pi(a)) is not in the structure"}
            break
        diff = Xa - adm[i].chosen_field
        if diff and membership(D, GeneralizedSection(diff, DifferentialForm.zero(ea.patch, 1))) is None:
            wit = {"a": name, "reason": "X_a and the solved Hamiltonian field differ outside the structure"}
            break
    rep.add("triangle", Verdict(wit is None, witness=wit))

    constants = all(not x for row in table for x in row) and all(
        D.twist.is_zero() or not a.chosen_field or not interior_product(a.chosen_field, D.twist.H) for a in adm)
    rep.data["constants_of_motion"] = constants
    return rep


def potential(alpha: DifferentialForm) -> ScalarField:
    """A polynomial f with df = alpha, by coordinatewise integration."""
    if alpha.degree != 1:
        raise ValueError("need a 1-form")
    patch = alpha.patch
    f = patch.zero
    for i in range(patch.dim):
        rest = alpha.component((i,)) - f.diff(i)
        if not rest:
            continue
        if not rest.is_polynomial():
            raise PreconditionError(f"{rest} has no polynomial antiderivative", witness=alpha)
        f = f + antiderivative_polynomial(rest, i)
    if function_differential(f) != alpha:
        raise PreconditionError(f"{alpha} is not closed", witness=exterior_derivative(alpha))
    return f
