"""Sections of T M + Lambda^k T*M, the pairing, and the twisted brackets."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .exterior import (DifferentialForm, VectorField, exterior_derivative, interior_product,
                       lie_bracket, lie_derivative_form)
from .report import Verdict
from .scalar import Patch, ScalarField


@dataclass(frozen=True)
class GeneralizedSection:
    """X + alpha with alpha a form of degree ``order``."""

    vector: VectorField
    form: DifferentialForm

    def __post_init__(self):
        if self.vector.patch != self.form.patch:
            raise ValueError("vector and form parts live on different patches")

    @classmethod
    def of(cls, vector: VectorField, form) -> "GeneralizedSection":
        if isinstance(form, ScalarField):
            form = DifferentialForm.function(form)
        return cls(vector, form)

    @classmethod
    def zero(cls, patch: Patch, order: int = 1):
        return cls(VectorField.zero(patch), DifferentialForm.zero(patch, order))

    @property
    def patch(self) -> Patch:
        return self.vector.patch

    @property
    def order(self) -> int:
        return self.form.degree

    def is_zero(self):
        return self.vector.is_zero() and self.form.is_zero()

    def __add__(self, other):
        return GeneralizedSection(self.vector + other.vector, self.form + other.form)

    def __sub__(self, other):
        return GeneralizedSection(self.vector - other.vector, self.form - other.form)

    def __neg__(self):
        return GeneralizedSection(-self.vector, -self.form)

    def __mul__(self, f):
        return GeneralizedSection(self.vector * f, self.form * f)

    __rmul__ = __mul__

    def __str__(self):
        return f"({self.vector}) + ({self.form})"


@dataclass(frozen=True)
class Twist:
    """A closed (k+2)-form H twisting the order-k Dorfman bracket."""

    H: DifferentialForm

    def __post_init__(self):
        if self.H.degree < 2:
            raise ValueError(f"a twist has degree >= 2, got {self.H.degree}")
        if self.H.degree < self.H.patch.dim:
            dH = exterior_derivative(self.H)
            if dH:
                raise ValueError(f"twist is not closed: dH = {dH}")

    @classmethod
    def zero(cls, patch: Patch, order: int = 1):
        return cls(DifferentialForm.zero(patch, order + 2))

    @property
    def order(self) -> int:
        return self.H.degree - 2

    @property
    def patch(self) -> Patch:
        return self.H.patch

    def is_zero(self):
        return self.H.is_zero()

    def __str__(self):
        return str(self.H)


def _contract_twist(H: DifferentialForm, Y: VectorField, X: VectorField) -> DifferentialForm:
    """i_Y i_X H."""
    if H.is_zero() or X.is_zero() or Y.is_zero():
        return DifferentialForm.zero(H.patch, H.degree - 2)
    return interior_product(Y, interior_product(X, H))


def _check_orders(H: Twist, *sections):
    for s in sections:
        if s.patch != H.patch:
            raise ValueError("section and twist live on different patches")
        if s.order != H.order:
            raise ValueError(f"order mismatch: section of order {s.order}, twist of order {H.order}")


def pairing(s: GeneralizedSection, t: GeneralizedSection) -> ScalarField:
    """<X + a, Y + b> = (i_X b + i_Y a) / 2, on order-1 sections only."""
    if s.order != 1 or t.order != 1:
        raise ValueError("the symmetric pairing is defined on order-1 sections only")
    a = interior_product(s.vector, t.form).as_function()
    b = interior_product(t.vector, s.form).as_function()
    return (a + b) / 2


def dorfman(H: Twist, s: GeneralizedSection, t: GeneralizedSection) -> GeneralizedSection:
    """[X + a, Y + b]_H = [X, Y] + (L_X b - i_Y d a - i_Y i_X H)."""
    _check_orders(H, s, t)
    X, a = s.vector, s.form
    Y, b = t.vector, t.form
    form = lie_derivative_form(X, b)
    if not Y.is_zero():
        da = exterior_derivative(a)
        if da:
            form = form - interior_product(Y, da)
        form = form - _contract_twist(H.H, Y, X)
    return GeneralizedSection(lie_bracket(X, Y), form)


def courant_bracket(H: Twist, s: GeneralizedSection, t: GeneralizedSection) -> GeneralizedSection:
    """Skew bracket [X,Y] + (L_X b - L_Y a - d(i_X b - i_Y a)/2 - i_Y i_X H)."""
    _check_orders(H, s, t)
    if H.order != 1:
        raise ValueError("the twisted Courant bracket is defined at order 1")
    X, a = s.vector, s.form
    Y, b = t.vector, t.form
    ixb = interior_product(X, b)
    iya = interior_product(Y, a)
    form = (lie_derivative_form(X, b) - lie_derivative_form(Y, a)
            - exterior_derivative(ixb - iya) * Fraction(1, 2)
            - _contract_twist(H.H, Y, X))
    return GeneralizedSection(lie_bracket(X, Y), form)


def admissibility_residual(H: Twist, s: GeneralizedSection) -> DifferentialForm:
    """d alpha + i_X H."""
    _check_orders(H, s)
    out = exterior_derivative(s.form)
    if not H.is_zero() and not s.vector.is_zero():
        out = out + interior_product(s.vector, H.H)
    return out


def is_admissible_pair(H: Twist, s: GeneralizedSection) -> Verdict:
    residual = admissibility_residual(H, s)
    if residual.is_zero():
        return Verdict(True, detail="d(alpha) + i_X H = 0")
    return Verdict(False, witness=residual, detail=f"d(alpha) + i_X H = {residual}")


def coordinate_probes(patch: Patch, order: int = 1) -> list:
    """Sections d/dx^i + 0; enough to detect any non-diagonal adjoint action."""
    return [GeneralizedSection(VectorField.coordinate(patch, i), DifferentialForm.zero(patch, order))
            for i in range(patch.dim)]


def adjoint_is_diagonal(H: Twist, s: GeneralizedSection,
                        probes: Optional[Sequence[GeneralizedSection]] = None) -> Verdict:
    """Whether [s, t]_H = L_X Y + L_X b for every probe t = Y + b."""
    if probes is None:
        probes = coordinate_probes(s.patch, s.order)
    for t in probes:
        got = dorfman(H, s, t)
        want = GeneralizedSection(lie_bracket(s.vector, t.vector), lie_derivative_form(s.vector, t.form))
        if got != want:
            return Verdict(False, witness=(t, got.form - want.form),
                           detail=f"off-diagonal term {got.form - want.form} on probe {t}")
    return Verdict(True, detail=f"diagonal on {len(probes)} probes")


def section_sum(coeffs: Iterable, sections: Sequence[GeneralizedSection]) -> GeneralizedSection:
    out = None
    for c, s in zip(coeffs, sections):
        if not c:
            continue
        term = s * c
        out = term if out is None else out + term
    if out is None:
        return GeneralizedSection.zero(sections[0].patch, sections[0].order)
    return out
