"""Twisted Dirac structures as finitely generated modules of order-1 sections.

Rank and membership are decided over the field of rational functions, so every
verdict is generic; the factors whose vanishing could change it are kept as
``locus`` on the relevant verdicts.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Sequence

from .courant import GeneralizedSection, Twist, dorfman, pairing, section_sum
from .errors import PreconditionError
from .exterior import DifferentialForm, VectorField, interior_product
from .linalg import Elimination, eliminate
from .report import CheckReport, Verdict
from .scalar import Patch, ScalarField


def section_column(s: GeneralizedSection) -> list:
    """Coordinates of an order-1 section: vector components, then dx^i components."""
    n = s.patch.dim
    return list(s.vector.components) + [s.form.component((i,)) for i in range(n)]


def section_from_column(patch: Patch, col: Sequence) -> GeneralizedSection:
    n = patch.dim
    vec = VectorField(patch, col[:n])
    form = DifferentialForm(patch, 1, {(i,): c for i, c in enumerate(col[n:]) if c})
    return GeneralizedSection(vec, form)


@dataclass(frozen=True)
class DiracStructure:
    """A candidate Dirac structure; call :func:`validate` to check the axioms."""

    twist: Twist
    generators: tuple
    label: str = ""

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise ValueError("a Dirac structure needs at least one generator")
        if self.twist.order != 1:
            raise ValueError("Dirac structures are modeled at order 1 only")
        for g in gens:
            if g.patch != self.twist.patch:
                raise ValueError("generator and twist live on different patches")
            if g.order != 1:
                raise ValueError(f"generator of order {g.order}; expected 1")

    @property
    def patch(self) -> Patch:
        return self.twist.patch

    def coefficient_matrix(self) -> List[list]:
        """The 2n x m matrix whose columns are the generators."""
        cols = [section_column(g) for g in self.generators]
        return [list(row) for row in zip(*cols)]

    @cached_property
    def elimination(self) -> Elimination:
        return eliminate(self.coefficient_matrix(), ncols=len(self.generators))

    def combination(self, coeffs) -> GeneralizedSection:
        return section_sum(coeffs, self.generators)

    def __str__(self):
        gens = ", ".join(f"[{g}]" for g in self.generators)
        return f"{self.label or 'D'}: H = {self.twist}; span {{{gens}}}"


def graph_of_two_form(h: DifferentialForm, twist: Optional[Twist] = None, label="") -> DiracStructure:
    """Generators (d/dx^i, i_{d/dx^i} h)."""
    if h.degree != 2:
        raise ValueError(f"expected a 2-form, got degree {h.degree}")
    patch = h.patch
    twist = twist if twist is not None else Twist.zero(patch)
    gens = []
    for i in range(patch.dim):
        X = VectorField.coordinate(patch, i)
        gens.append(GeneralizedSection(X, interior_product(X, h)))
    return DiracStructure(twist, tuple(gens), label or f"graph({h})")


def graph_of_bivector(p: Sequence[Sequence], twist: Optional[Twist] = None, label="") -> DiracStructure:
    """Generators (sum_j p_ij d/dx^j, dx^i); Poisson graphs admit no twist."""
    p = [list(row) for row in p]
    n = len(p)
    if n == 0 or any(len(row) != n for row in p):
        raise ValueError("bivector must be a square matrix")
    sample = next((x for row in p for x in row if isinstance(x, ScalarField)), None)
    if sample is None:
        raise ValueError("bivector entries must be ScalarFields")
    patch = sample.patch
    if patch.dim != n:
        raise ValueError(f"bivector is {n}x{n} on a {patch.dim}-dimensional patch")
    p = [[x if isinstance(x, ScalarField) else patch.const(x) for x in row] for row in p]
    for i in range(n):
        for j in range(i, n):
            if p[i][j] + p[j][i]:
                raise ValueError(f"bivector is not antisymmetric at ({i}, {j})")
    if twist is not None and not twist.is_zero():
        raise PreconditionError("a bivector graph cannot carry a nonzero twist", witness=twist.H)
    gens = [GeneralizedSection(VectorField(patch, p[i]), DifferentialForm.coordinate(patch, i))
            for i in range(n)]
    return DiracStructure(Twist.zero(patch), tuple(gens), label or "graph(bivector)")


def cotangent_structure(patch: Patch, twist: Optional[Twist] = None) -> DiracStructure:
    """T*M, spanned by (0, dx^i)."""
    gens = [GeneralizedSection(VectorField.zero(patch), DifferentialForm.coordinate(patch, i))
            for i in range(patch.dim)]
    return DiracStructure(twist if twist is not None else Twist.zero(patch), tuple(gens), "T*M")


def check_isotropic(D: DiracStructure) -> Verdict:
    gens = D.generators
    for i in range(len(gens)):
        for j in range(i, len(gens)):
            value = pairing(gens[i], gens[j])
            if value:
                return Verdict(False, witness={"pair": (i, j), "sections": (gens[i], gens[j]), "value": value},
                               detail=f"<e{i}, e{j}> = {value}")
    return Verdict(True, detail=f"{len(gens)} generators pairwise orthogonal")


def generic_rank(D: DiracStructure) -> int:
    return D.elimination.rank


def check_maximal(D: DiracStructure) -> Verdict:
    r = generic_rank(D)
    locus = D.elimination.locus
    if r == D.patch.dim:
        return Verdict(True, detail=f"generic rank {r}", locus=locus)
    return Verdict(False, witness={"rank": r, "dim": D.patch.dim},
                   detail=f"generic rank {r} != {D.patch.dim}", locus=locus)


def membership(D: DiracStructure, s: GeneralizedSection) -> Optional[list]:
    """Coefficients c with sum c_i e_i = s over the fraction field, or None."""
    if s.patch != D.patch or s.order != 1:
        raise ValueError("section does not match the structure's patch/order")
    return D.elimination.solve(section_column(s))


def contains(D: DiracStructure, s: GeneralizedSection) -> bool:
    return membership(D, s) is not None


def check_involutive(D: DiracStructure) -> Verdict:
    gens = D.generators
    H = D.twist
    for i in range(len(gens)):
        for j in range(i, len(gens)):
            b = dorfman(H, gens[i], gens[j])
            if membership(D, b) is None:
                residual = [pairing(b, g) for g in gens]
                return Verdict(False, witness={"pair": (i, j), "bracket": b, "pairings": residual},
                               detail=f"[e{i}, e{j}]_H = {b} leaves the span",
                               locus=D.elimination.locus)
    return Verdict(True, detail="all generator brackets stay in the span", locus=D.elimination.locus)


def validate(D: DiracStructure) -> CheckReport:
    """Isotropy, generic maximality, and involutivity, in that order."""
    rep = CheckReport(f"Dirac structure {D.label}".strip())
    iso = rep.add("isotropic", check_isotropic(D))
    rep.add("maximal", check_maximal(D))
    rep.data["rank"] = generic_rank(D)
    if iso.ok and rep["maximal"].ok:
        rep.add("involutive", check_involutive(D))
    else:
        rep.add("involutive", Verdict(False, witness="prerequisites failed",
                                      detail="skipped: isotropy or rank check failed"))
    return rep
