"""Scripted mutation pass over scenario documents.

Each mutant doubles exactly one nonzero coefficient: a form coefficient, a
vector-field component (including rho entries and psi), a scalar, a structure
constant, or a linear-map entry.  Bare references to named objects are
skipped, since the named definition is mutated on its own.  A mutant is *caught* when some check changes
status or the scenario no longer loads.
"""
from __future__ import annotations

import copy
from dataclasses import dataclass
from typing import Iterator, List, Optional

from .errors import DiracKitError
from .exterior import DifferentialForm, VectorField, exterior_derivative
from .parsing import parse_expression, parse_rational
from .scalar import ScalarField
from .scenario import RunOptions, Scenario, build_scenario, run_checks


@dataclass
class Mutant:
    where: str
    description: str
    doc: dict


@dataclass
class MutationResult:
    where: str
    description: str
    caught: bool
    evidence: str


def _scaled_variants(obj) -> Iterator[tuple]:
    if isinstance(obj, ScalarField):
        if obj:
            yield "x2", obj * 2
    elif isinstance(obj, VectorField):
        names = obj.patch.coordinate_names
        for i, c in enumerate(obj.components):
            if c:
                comps = list(obj.components)
                comps[i] = c * 2
                yield f"@{names[i]} coefficient x2", VectorField(obj.patch, comps)
    elif isinstance(obj, DifferentialForm):
        names = obj.patch.coordinate_names
        for key, c in obj.items():
            coeffs = obj.coefficients
            coeffs[key] = c * 2
            label = "^".join("d" + names[i] for i in key) or "function"
            yield f"{label} coefficient x2", DifferentialForm(obj.patch, obj.degree, coeffs)


def _display(keys) -> str:
    out = ""
    for k in keys:
        out += f"[{k}]" if isinstance(k, int) else (f".{k}" if out else k)
    return out


def _literal_sites(doc: dict) -> Iterator[tuple]:
    """Key paths of every mutable symbolic literal (checks are left alone)."""
    for section in ("scalars", "forms", "vectors"):
        for name in doc.get(section, {}):
            yield (section, name)
    for name in doc.get("sections", {}):
        yield ("sections", name, "vector")
        yield ("sections", name, "form")
    for name, spec in doc.get("structures", {}).items():
        for key in ("graph_of", "twist"):
            if key in spec:
                yield ("structures", name, key)
        for i, row in enumerate(spec.get("bivector", [])):
            for j in range(len(row)):
                yield ("structures", name, "bivector", i, j)
        for i, g in enumerate(spec.get("generators", [])):
            if isinstance(g, dict):
                yield ("structures", name, "generators", i, "vector")
                yield ("structures", name, "generators", i, "form")
    for name, spec in doc.get("actions", {}).items():
        for i in range(len(spec.get("psi", []))):
            yield ("actions", name, "psi", i)
        for i, s in enumerate(spec.get("rho", [])):
            if isinstance(s, dict):
                yield ("actions", name, "rho", i, "vector")
                yield ("actions", name, "rho", i, "form")
        for key in ("twist", "omega", "h"):
            if key in spec:
                yield ("actions", name, key)
        for i in range(len(spec.get("mu", []))):
            yield ("actions", name, "mu", i)
    for name, spec in doc.get("moment_maps", {}).items():
        for i in range(len(spec.get("values", []))):
            yield ("moment_maps", name, "values", i)


def _rational_sites(doc: dict) -> Iterator[tuple]:
    for name, spec in doc.get("algebras", {}).items():
        for n in range(len(spec.get("constants", []))):
            yield ("algebras", name, "constants", n, 3)
    for name, spec in doc.get("modules", {}).items():
        for n in range(len(spec.get("action", []))):
            yield ("modules", name, "action", n, 3)
    for name, spec in doc.get("maps", {}).items():
        for i, row in enumerate(spec.get("images", [])):
            for j in range(len(row)):
                yield ("maps", name, "images", i, j)


def _get(doc, keys):
    for k in keys:
        doc = doc[k]
    return doc


def _replaced(doc, keys, value) -> dict:
    out = copy.deepcopy(doc)
    _get(out, keys[:-1])[keys[-1]] = value
    return out


def mutants(sc: Scenario) -> Iterator[Mutant]:
    doc = sc.doc
    for keys in _literal_sites(doc):
        spec = _get(doc, keys)
        text = spec["d"] if isinstance(spec, dict) else spec
        if str(text).strip() in sc.env:
            continue  # a bare reference; its definition is mutated instead
        try:
            obj = parse_expression(sc.patch, str(text), env=sc.env)
        except DiracKitError:
            continue
        if isinstance(spec, dict):
            obj = exterior_derivative(obj if isinstance(obj, DifferentialForm) else DifferentialForm.function(obj))
        for label, new in _scaled_variants(obj):
            yield Mutant(_display(keys), label, _replaced(doc, keys, str(new)))
    for keys in _rational_sites(doc):
        q = parse_rational(_get(doc, keys))
        if q:
            yield Mutant(_display(keys), f"entry {q} x2", _replaced(doc, keys, str(q * 2)))


def _statuses(sc: Scenario, opts) -> dict:
    return {o.name: o.status for o in run_checks(sc, opts=opts)}


def run_mutations(sc: Scenario, opts: Optional[RunOptions] = None) -> List[MutationResult]:
    opts = opts or RunOptions()
    baseline = _statuses(sc, opts)
    out = []
    for m in mutants(sc):
        try:
            msc = build_scenario(m.doc, sc.name)
        except DiracKitError as exc:
            out.append(MutationResult(m.where, m.description, True, f"load error: {exc}"))
            continue
        status = _statuses(msc, opts)
        changed = [k for k in baseline if status.get(k) != baseline[k]]
        evidence = f"{changed[0]}: {baseline[changed[0]]} -> {status.get(changed[0])}" if changed else ""
        out.append(MutationResult(m.where, m.description, bool(changed), evidence))
    return out
