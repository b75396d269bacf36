"""H-admissible functions of a twisted Dirac structure and their Poisson bracket.

Convention: a graph section is (X, i_X h), so the Hamiltonian condition is
i_{X_f} h = df and {f, g} = X_f(g).  On graph(dx^dy) this gives X_x = -d/dy
and {x, y} = -1.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .courant import GeneralizedSection, dorfman
from .dirac import DiracStructure, membership
from .errors import PreconditionError
from .exterior import (DifferentialForm, VectorField, evaluate, function_differential,
                       interior_product, lie_bracket)
from .linalg import eliminate, independent_subset
from .report import CheckReport, Verdict
from .scalar import ScalarField


@dataclass(frozen=True)
class HamiltonianSolution:
    """All X with (X, df) in the structure: particular + span(homogeneous_basis)."""

    f: ScalarField
    particular: VectorField
    homogeneous_basis: tuple = ()
    locus: tuple = ()

    def field(self, coeffs: Sequence = ()) -> VectorField:
        X = self.particular
        for c, Y in zip(coeffs, self.homogeneous_basis):
            if c:
                X = X + Y * c
        return X


@dataclass(frozen=True)
class AdmissibleFunction:
    f: ScalarField
    chosen_field: VectorField
    locus: tuple = ()

    def __str__(self):
        return str(self.f)


def _vector_rows(D: DiracStructure):
    n = D.patch.dim
    gens = D.generators
    return [[g.vector.components[i] for g in gens] for i in range(n)]


def _form_rows(D: DiracStructure):
    n = D.patch.dim
    gens = D.generators
    return [[g.form.component((i,)) for g in gens] for i in range(n)]


def _field_from_coeffs(D: DiracStructure, c) -> VectorField:
    X = VectorField.zero(D.patch)
    for ci, g in zip(c, D.generators):
        if ci and g.vector:
            X = X + g.vector * ci
    return X


def _df_column(f: ScalarField):
    return [f.diff(i) for i in range(f.patch.dim)]


def hamiltonian_fields(D: DiracStructure, f: ScalarField) -> Optional[HamiltonianSolution]:
    """Solve (X, df) in span(generators) for X; None when no such X exists."""
    E = eliminate(_form_rows(D), ncols=len(D.generators))
    c = E.solve(_df_column(f))
    if c is None:
        return None
    particular = _field_from_coeffs(D, c)
    homogeneous = [_field_from_coeffs(D, v) for v in E.nullspace()]
    homogeneous = [Y for Y in homogeneous if Y]
    keep = independent_subset([list(Y.components) for Y in homogeneous]) if homogeneous else []
    return HamiltonianSolution(f, particular, tuple(homogeneous[k] for k in keep), tuple(E.locus))


def _twist_rows(D: DiracStructure):
    """Rows expressing i_X H = 0 linearly in the generator coefficients."""
    H = D.twist.H
    if H.is_zero():
        return []
    contractions = [interior_product(g.vector, H) if g.vector else None for g in D.generators]
    rows = []
    for key in combinations(range(D.patch.dim), H.degree - 1):
        row = [c.component(key) if c is not None else D.patch.zero for c in contractions]
        if any(row):
            rows.append(row)
    return rows


def is_H_admissible(D: DiracStructure, f: ScalarField) -> Optional[AdmissibleFunction]:
    """A Hamiltonian field X_f with i_{X_f} H = 0, found by one combined linear solve."""
    form_rows = _form_rows(D)
    twist_rows = _twist_rows(D)
    E = eliminate(form_rows + twist_rows, ncols=len(D.generators))
    rhs = _df_column(f) + [D.patch.zero] * len(twist_rows)
    c = E.solve(rhs)
    if c is None:
        return None
    return AdmissibleFunction(f, _field_from_coeffs(D, c), tuple(E.locus))


def admissibility(D: DiracStructure, f: ScalarField) -> Verdict:
    """Verdict form of :func:`is_H_admissible`, with a witness on failure."""
    af = is_H_admissible(D, f)
    if af is not None:
        return Verdict(True, witness=None, detail=f"X_f = {af.chosen_field}", locus=list(af.locus))
    sol = hamiltonian_fields(D, f)
    if sol is None:
        return Verdict(False, witness={"f": f, "reason": "no Hamiltonian field"},
                       detail="(X, df) is in the structure for no X")
    residual = interior_product(sol.particular, D.twist.H) if sol.particular else None
    return Verdict(False, witness={"f": f, "X_f": sol.particular, "i_X H": residual},
                   detail=f"no Hamiltonian field annihilates H; e.g. X_f = {sol.particular}, "
                          f"i_X H = {residual}", locus=list(sol.locus))


def _as_admissible(D, f) -> AdmissibleFunction:
    if isinstance(f, AdmissibleFunction):
        return f
    af = is_H_admissible(D, f)
    if af is None:
        raise PreconditionError(f"{f} is not H-admissible", witness=f)
    return af


def poisson_bracket(D: DiracStructure, f, g) -> ScalarField:
    """{f, g} = L_{X_f} g."""
    f = _as_admissible(D, f)
    g_fun = g.f if isinstance(g, AdmissibleFunction) else g
    return f.chosen_field(g_fun)


def _check_field(D: DiracStructure, af: AdmissibleFunction) -> Optional[str]:
    s = GeneralizedSection(af.chosen_field, function_differential(af.f))
    if membership(D, s) is None:
        return "(X_f, df) is not in the structure"
    if not D.twist.is_zero() and af.chosen_field and interior_product(af.chosen_field, D.twist.H):
        return f"i_X H = {interior_product(af.chosen_field, D.twist.H)}"
    return None


def verify_poisson_algebra(D: DiracStructure, fs: Sequence[AdmissibleFunction]) -> CheckReport:
    """Closure under product and bracket, antisymmetry, Leibniz rule and Jacobi identity."""
    fs = [_as_admissible(D, f) for f in fs]
    rep = CheckReport(f"Poisson algebra on {D.label}".strip())
    if len(fs) < 3:
        raise ValueError("need at least three functions")

    bad = [(str(af.f), why) for af in fs if (why := _check_field(D, af))]
    rep.add("hamiltonian_fields", Verdict(not bad, witness=bad[0] if bad else None,
                                          detail=f"{len(fs)} chosen fields checked"))
    br = lambda a, b: a.chosen_field(b.f)  # noqa: E731
    table = [[br(a, b) for b in fs] for a in fs]
    rep.data["functions"] = [str(af.f) for af in fs]
    rep.data["table"] = [[str(x) for x in row] for row in table]

    prods, brs = {}, {}
    for i in range(len(fs)):
        for j in range(len(fs)):
            if i <= j and (i, j) not in prods:
                prods[(i, j)] = is_H_admissible(D, fs[i].f * fs[j].f)
            if (i, j) not in brs:
                brs[(i, j)] = is_H_admissible(D, table[i][j])
    miss = [(str(fs[i].f), str(fs[j].f)) for (i, j), v in prods.items() if v is None]
    rep.add("closure_product", Verdict(not miss, witness=miss[0] if miss else None,
                                       detail=f"{len(prods)} products admissible" if not miss
                                       else f"f*g not admissible for {miss[0]}"))
    miss = [(str(fs[i].f), str(fs[j].f)) for (i, j), v in brs.items() if v is None]
    rep.add("closure_bracket", Verdict(not miss, witness=miss[0] if miss else None,
                                       detail=f"{len(brs)} brackets admissible" if not miss
                                       else f"{{f,g}} not admissible for {miss[0]}"))

    wit = None
    for i in range(len(fs)):
        for j in range(i, len(fs)):
            if table[i][j] + table[j][i]:
                wit = {"f": fs[i].f, "g": fs[j].f, "{f,g}+{g,f}": table[i][j] + table[j][i]}
                break
        if wit:
            break
    rep.add("antisymmetry", Verdict(wit is None, witness=wit))

    wit = None
    n = len(fs)
    for i in range(n):
        for j in range(n):
            for k in range(j, n):
                a, b, c = fs[i], fs[j], fs[k]
                bc = prods[(j, k)]
                lhs = a.chosen_field(b.f * c.f)
                rhs = table[i][j] * c.f + b.f * table[i][k]
                if lhs != rhs:
                    wit = {"slot": 2, "f": a.f, "g": b.f, "h": c.f, "residual": lhs - rhs}
                elif bc is not None:
                    # product in the first slot, with a freshly solved field for gh
                    lhs = bc.chosen_field(a.f)
                    rhs = table[j][i] * c.f + b.f * table[k][i]
                    if lhs != rhs:
                        wit = {"slot": 1, "f": a.f, "g": b.f, "h": c.f, "residual": lhs - rhs}
                if wit:
                    break
            if wit:
                break
        if wit:
            break
    rep.add("leibniz", Verdict(wit is None, witness=wit))

    wit = None
    for i, j, k in combinations(range(n), 3):
        a, b, c = fs[i], fs[j], fs[k]
        s = a.chosen_field(table[j][k]) + b.chosen_field(table[k][i]) + c.chosen_field(table[i][j])
        if s:
            wit = {"f": a.f, "g": b.f, "h": c.f, "jacobiator": s}
            break
    rep.add("jacobi", Verdict(wit is None, witness=wit))
    return rep


def hamiltonian_pair(D: DiracStructure, f) -> AdmissibleFunction:
    """Some Hamiltonian field for f, admissible or not (admissible preferred)."""
    if isinstance(f, AdmissibleFunction):
        return f
    af = is_H_admissible(D, f)
    if af is not None:
        return af
    sol = hamiltonian_fields(D, f)
    if sol is None:
        raise PreconditionError(f"{f} has no Hamiltonian field", witness=f)
    return AdmissibleFunction(f, sol.particular, sol.locus)


def admissible_bracket_identity(D: DiracStructure, f, g) -> CheckReport:
    """Restricting the twisted Dorfman bracket to pairs (X_f, df), (X_g, dg)."""
    a = hamiltonian_pair(D, f)
    b = hamiltonian_pair(D, g)
    H = D.twist
    rep = CheckReport(f"bracket identity for ({a.f}, {b.f})")
    Xf, Xg = a.chosen_field, b.chosen_field
    pb = Xf(b.f)
    lhs = dorfman(H, GeneralizedSection(Xf, function_differential(a.f)),
                  GeneralizedSection(Xg, function_differential(b.f)))
    comm = lie_bracket(Xf, Xg)
    rhs = GeneralizedSection(comm, function_differential(pb))
    diff = lhs - rhs
    rep.add("dorfman_restriction", Verdict(diff.is_zero(), witness=None if diff.is_zero() else diff.form,
                                           detail="" if diff.is_zero() else f"residual {diff}"))
    contr = interior_product(comm, H.H) if comm and not H.is_zero() else DifferentialForm.zero(D.patch, 2)
    rep.add("commutator_annihilates_twist", Verdict(contr.is_zero(), witness=contr or None,
                                                    detail="" if contr.is_zero() else f"i_[Xf,Xg] H = {contr}"))
    inside = membership(D, rhs) is not None
    rep.add("hamiltonian_of_bracket", Verdict(inside, witness=None if inside else rhs,
                                              detail="([Xf,Xg], d{f,g}) in the structure" if inside
                                              else "([Xf,Xg], d{f,g}) leaves the structure"))
    rep.data["bracket"] = str(pb)
    return rep


def jacobiator(D: DiracStructure, f: ScalarField, g: ScalarField, h: ScalarField):
    """(cyclic Jacobi sum, H(X_f, X_g, X_h)) for the unique Hamiltonian fields of a graph."""
    fields = []
    for u in (f, g, h):
        sol = hamiltonian_fields(D, u)
        if sol is None or sol.homogeneous_basis:
            raise PreconditionError("Hamiltonian fields are not unique: the 2-form is degenerate",
                                    witness=u)
        fields.append(sol.particular)
    Xf, Xg, Xh = fields
    cyc = Xf(Xg(h)) + Xg(Xh(f)) + Xh(Xf(g))
    H = D.twist.H
    value = evaluate(H, Xf, Xg, Xh) if H.degree == 3 else D.patch.zero
    return cyc, value
