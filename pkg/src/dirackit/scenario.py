"""JSON scenario files: named symbolic objects plus a list of checks to run.

Symbolic payloads are strings in the literal grammar of :mod:`dirackit.parsing`.
Each section of the document may refer to names defined in earlier sections.
"""
from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Dict, List, Optional

from . import actions as act
from . import leibniz as lz
from .courant import GeneralizedSection, Twist, dorfman, is_admissible_pair, adjoint_is_diagonal
from .dirac import (DiracStructure, cotangent_structure, graph_of_bivector, graph_of_two_form,
                    validate as validate_dirac, check_involutive)
from .errors import DiracKitError, ParseError
from .exterior import (DifferentialForm, VectorField, exterior_derivative, lie_derivative_form,
                       lie_derivative_transport)
from .parsing import parse_form, parse_rational, parse_scalar, parse_vector
from .poisson import admissibility, admissible_bracket_identity, jacobiator, \
    verify_poisson_algebra
from .randgen import random_form, random_section, random_twist
from .report import CheckReport, Verdict
from .scalar import Patch, ScalarField

BUNDLED = ("r2_symplectic", "r3_twist_basic", "r4_twisted_graph", "r4_dirac_action",
           "sl2_hemisemidirect", "r2_translation_moment")

SUBCOMMAND_KINDS = {
    "check-dirac": {"dirac", "dorfman", "admissible_pair", "properties"},
    "admissible": {"admissible"},
    "poisson-table": {"poisson", "jacobiator"},
    "leibniz-check": {"leibniz", "courant_algebra", "leibniz_from_equivariant"},
    "action-check": {"extension", "dirac_action"},
    "moment-check": {"moment_map", "compatible", "pi_mu"},
}
ALL_KINDS = set().union(*SUBCOMMAND_KINDS.values())


class ScenarioError(DiracKitError):
    """A scenario could not be loaded; ``where`` is the JSON path of the bad entry."""

    def __init__(self, where, message, offset=None, literal=None):
        self.where = where
        self.message = message
        self.offset = offset
        self.literal = literal  # set when ``offset`` is relative to this literal string
        loc = f"{where}" + (f" (byte {offset})" if offset is not None else "")
        super().__init__(f"{loc}: {message}")

    def in_file(self, text: str) -> "ScenarioError":
        """Re-anchor a literal-relative offset to a byte offset in the source text."""
        if self.literal is None or self.offset is None:
            return self
        needle = json.dumps(self.literal, ensure_ascii=False)
        at = text.find(needle)
        if at < 0 or text.find(needle, at + 1) >= 0 or "\\" in needle:
            return self
        base = len(text[:at + 1].encode())
        prefix = len(self.literal.encode()[:self.offset].decode(errors="ignore").encode())
        return ScenarioError(self.where, self.message, base + prefix)


@dataclass
class Scenario:
    name: str
    patch: Patch
    doc: dict
    env: Dict[str, Any] = field(default_factory=dict)
    sections: Dict[str, GeneralizedSection] = field(default_factory=dict)
    structures: Dict[str, DiracStructure] = field(default_factory=dict)
    algebras: Dict[str, lz.FiniteLeibnizAlgebra] = field(default_factory=dict)
    modules: Dict[str, lz.GModule] = field(default_factory=dict)
    maps: Dict[str, lz.LinearMap] = field(default_factory=dict)
    courant_algebras: Dict[str, lz.CourantAlgebraSpec] = field(default_factory=dict)
    actions: Dict[str, act.ExtendedAction] = field(default_factory=dict)
    moment_maps: Dict[str, act.MomentMap] = field(default_factory=dict)
    checks: List[dict] = field(default_factory=list)

    def objects(self):
        """Every named object, for round-trip comparisons."""
        return {"env": self.env, "sections": self.sections, "structures": self.structures,
                "algebras": self.algebras, "modules": self.modules, "maps": self.maps,
                "courant_algebras": self.courant_algebras, "actions": self.actions,
                "moment_maps": self.moment_maps}


class _Loader:
    def __init__(self, doc: dict, name: str):
        if not isinstance(doc, dict):
            raise ScenarioError("$", "scenario must be a JSON object")
        self.doc = doc
        coords = doc.get("patch")
        if not isinstance(coords, list) or not all(isinstance(c, str) for c in coords):
            raise ScenarioError("patch", "expected a list of coordinate names")
        try:
            patch = Patch(tuple(coords))
        except ValueError as exc:
            raise ScenarioError("patch", str(exc)) from None
        self.sc = Scenario(doc.get("name", name), patch, doc)

    # literal helpers -------------------------------------------------------
    def _parse(self, where, fn, text, *args):
        if not isinstance(text, str):
            if isinstance(text, (int, float)) and not isinstance(text, bool) and fn is not parse_vector:
                text = str(text)
            else:
                raise ScenarioError(where, f"expected a literal string, got {type(text).__name__}")
        try:
            return fn(self.sc.patch, text, *args, env=self.sc.env)
        except ParseError as exc:
            raise ScenarioError(where, exc.message, exc.offset, literal=text) from None
        except (ValueError, ZeroDivisionError) as exc:
            raise ScenarioError(where, str(exc)) from None

    def scalar(self, where, text) -> ScalarField:
        return self._parse(where, parse_scalar, text)

    def form(self, where, spec, degree=None) -> DifferentialForm:
        if isinstance(spec, dict):
            if set(spec) != {"d"}:
                raise ScenarioError(where, "a form object must be {\"d\": <literal>}")
            inner = self._parse(where + ".d", parse_form, spec["d"], None if degree is None else degree - 1)
            return exterior_derivative(inner)
        return self._parse(where, parse_form, spec, degree)

    def vector(self, where, text) -> VectorField:
        return self._parse(where, parse_vector, text)

    def twist(self, where, spec) -> Twist:
        if spec is None:
            return Twist.zero(self.sc.patch)
        H = self.form(where, spec, 3)
        try:
            return Twist(H)
        except ValueError as exc:
            raise ScenarioError(where, str(exc)) from None

    def section(self, where, spec, order=1) -> GeneralizedSection:
        if isinstance(spec, str):
            if spec not in self.sc.sections:
                raise ScenarioError(where, f"unknown section {spec!r}")
            return self.sc.sections[spec]
        if not isinstance(spec, dict) or "vector" not in spec or "form" not in spec:
            raise ScenarioError(where, "a section is {\"vector\": ..., \"form\": ...}")
        vec = self.vector(where + ".vector", spec["vector"])
        return GeneralizedSection(vec, self.form(where + ".form", spec["form"], order))

    def ref(self, where, table, key):
        store = getattr(self.sc, table)
        if key not in store:
            raise ScenarioError(where, f"unknown {table[:-1].replace('_', ' ')} {key!r}")
        return store[key]

    def _define(self, where, key, value):
        if not isinstance(key, str) or not key.isidentifier():
            raise ScenarioError(where, f"invalid name {key!r}")
        names = self.sc.patch.coordinate_names
        if key in names or (key.startswith("d") and key[1:] in names):
            raise ScenarioError(where, f"name {key!r} clashes with a coordinate")
        self.sc.env[key] = value

    # sections of the document ------------------------------------------------
    def load(self) -> Scenario:
        d = self.doc
        for key, text in d.get("scalars", {}).items():
            self._define(f"scalars.{key}", key, self.scalar(f"scalars.{key}", text))
        for key, spec in d.get("forms", {}).items():
            self._define(f"forms.{key}", key, self.form(f"forms.{key}", spec))
        for key, text in d.get("vectors", {}).items():
            self._define(f"vectors.{key}", key, self.vector(f"vectors.{key}", text))
        for key, spec in d.get("sections", {}).items():
            self.sc.sections[key] = self.section(f"sections.{key}", spec)
        for key, spec in d.get("structures", {}).items():
            self.sc.structures[key] = self.structure(f"structures.{key}", key, spec)
        for key, spec in d.get("algebras", {}).items():
            self.sc.algebras[key] = self.algebra(f"algebras.{key}", key, spec)
        for key, spec in d.get("modules", {}).items():
            self.sc.modules[key] = self.module(f"modules.{key}", spec)
        for key, spec in d.get("maps", {}).items():
            self.sc.maps[key] = self.linear_map(f"maps.{key}", spec)
        for key, spec in d.get("courant_algebras", {}).items():
            self.sc.courant_algebras[key] = self.courant_algebra(f"courant_algebras.{key}", spec)
        for key, spec in d.get("actions", {}).items():
            self.sc.actions[key] = self.action(f"actions.{key}", key, spec)
        for key, spec in d.get("moment_maps", {}).items():
            self.sc.moment_maps[key] = self.moment_map(f"moment_maps.{key}", spec)
        checks = d.get("checks", [])
        seen = set()
        for i, c in enumerate(checks):
            where = f"checks[{i}]"
            if not isinstance(c, dict) or "name" not in c or "kind" not in c:
                raise ScenarioError(where, "a check needs a name and a kind")
            if c["kind"] not in ALL_KINDS:
                raise ScenarioError(where, f"unknown check kind {c['kind']!r}")
            if c["name"] in seen:
                raise ScenarioError(where, f"duplicate check name {c['name']!r}")
            seen.add(c["name"])
            self._validate_check(where, c)
        self.sc.checks = list(checks)
        return self.sc

    def structure(self, where, key, spec) -> DiracStructure:
        try:
            if "graph_of" in spec:
                h = self.form(where + ".graph_of", spec["graph_of"], 2)
                return graph_of_two_form(h, self.twist(where + ".twist", spec.get("twist")), key)
            if "bivector" in spec:
                rows = spec["bivector"]
                p = [[self.scalar(f"{where}.bivector[{i}][{j}]", x) for j, x in enumerate(row)]
                     for i, row in enumerate(rows)]
                tw = self.twist(where + ".twist", spec["twist"]) if "twist" in spec else None
                return graph_of_bivector(p, tw, key)
            if spec.get("cotangent"):
                D = cotangent_structure(self.sc.patch, self.twist(where + ".twist", spec.get("twist")))
                return DiracStructure(D.twist, D.generators, key)
            gens = [self.section(f"{where}.generators[{i}]", g) for i, g in enumerate(spec.get("generators", []))]
            return DiracStructure(self.twist(where + ".twist", spec.get("twist")), tuple(gens), key)
        except (ValueError, DiracKitError) as exc:
            if isinstance(exc, ScenarioError):
                raise
            raise ScenarioError(where, str(exc)) from None

    def _constants(self, where, names, triples):
        out = []
        for n, t in enumerate(triples):
            if not isinstance(t, list) or len(t) != 4:
                raise ScenarioError(f"{where}[{n}]", "a structure constant is [i, j, k, rational]")
            idx = []
            for pos, x in enumerate(t[:3]):
                nm = names[pos] if isinstance(names[0], (list, tuple)) else names
                if isinstance(x, str):
                    if x not in nm:
                        raise ScenarioError(f"{where}[{n}]", f"unknown basis element {x!r}")
                    idx.append(nm.index(x))
                elif isinstance(x, int) and 0 <= x < len(nm):
                    idx.append(x)
                else:
                    raise ScenarioError(f"{where}[{n}]", f"bad index {x!r}")
            try:
                out.append((*idx, parse_rational(t[3])))
            except ParseError as exc:
                raise ScenarioError(f"{where}[{n}][3]", exc.message) from None
        return out

    def algebra(self, where, key, spec):
        try:
            if "builtin" in spec:
                b = spec["builtin"]
                if b == "sl2":
                    return lz.sl2()
                if b == "heisenberg":
                    return lz.heisenberg()
                if b == "abelian":
                    return lz.abelian(int(spec["dim"]), spec.get("basis"))
                raise ScenarioError(where, f"unknown builtin algebra {b!r}")
            names = tuple(spec["basis"])
            triples = self._constants(where + ".constants", names, spec.get("constants", []))
            n = len(names)
            t = lz._tensor(n, n, n, triples)
            if spec.get("kind", "lie") == "lie":
                return lz.FiniteLieAlgebra(names, t, key)
            return lz.FiniteLeibnizAlgebra(names, t, key)
        except ScenarioError:
            raise
        except (KeyError, ValueError, DiracKitError) as exc:
            raise ScenarioError(where, str(exc)) from None

    def module(self, where, spec) -> lz.GModule:
        g = self.ref(where + ".algebra", "algebras", spec.get("algebra"))
        try:
            if spec.get("adjoint"):
                return lz.adjoint_module(g)
            if "trivial" in spec:
                return lz.trivial_module(g, spec["trivial"])
            names = tuple(spec["basis"])
            triples = self._constants(where + ".action", (g.basis_names, names, names), spec.get("action", []))
            return lz.GModule(g, names, lz._tensor(g.dim, len(names), len(names), triples))
        except ScenarioError:
            raise
        except (KeyError, ValueError, DiracKitError) as exc:
            raise ScenarioError(where, str(exc)) from None

    def _space(self, where, key):
        if key in self.sc.modules:
            return self.sc.modules[key]
        return self.ref(where, "algebras", key)

    def linear_map(self, where, spec) -> lz.LinearMap:
        dom = self._space(where + ".from", spec.get("from"))
        cod = self._space(where + ".to", spec.get("to"))
        try:
            images = [[parse_rational(x) for x in row] for row in spec["images"]]
            return lz.LinearMap(dom, cod, images)
        except ParseError as exc:
            raise ScenarioError(where + ".images", exc.message) from None
        except (KeyError, ValueError) as exc:
            raise ScenarioError(where, str(exc)) from None

    def courant_algebra(self, where, spec) -> lz.CourantAlgebraSpec:
        if "hemisemidirect" in spec:
            gname, mname = spec["hemisemidirect"]
            return lz.hemisemidirect(self.ref(where, "algebras", gname), self.ref(where, "modules", mname))
        a = self.ref(where + ".algebra", "algebras", spec.get("algebra"))
        g = self.ref(where + ".over", "algebras", spec.get("over"))
        pi = self.ref(where + ".pi", "maps", spec.get("pi"))
        if pi.domain is not a or pi.codomain is not g:
            raise ScenarioError(where + ".pi", "pi must map the algebra onto the base Lie algebra")
        return lz.CourantAlgebraSpec(a, g, pi)

    def action(self, where, key, spec) -> act.ExtendedAction:
        g = self.ref(where + ".algebra", "algebras", spec.get("algebra"))
        fields = [self.vector(f"{where}.psi[{i}]", v) for i, v in enumerate(spec.get("psi", []))]
        kind = spec.get("kind", "explicit")
        try:
            psi = act.InfinitesimalAction(g, fields)
            if kind == "symplectic":
                return act.symplectic_extension(psi, self.form(where + ".omega", spec["omega"], 2), key)
            if kind == "diagonal":
                return act.diagonal_extension(psi, self.form(where + ".h", spec["h"], 2), key)
            if kind == "twisted":
                module = self.ref(where + ".module", "modules", spec["module"]) if "module" in spec else None
                mu = [self.scalar(f"{where}.mu[{i}]", m) for i, m in enumerate(spec.get("mu", []))] or None
                return act.build_twisted_extension(psi, self.form(where + ".h", spec["h"], 2), module, mu, key)
            if kind != "explicit":
                raise ScenarioError(where + ".kind", f"unknown action kind {kind!r}")
            if "courant_algebra" in spec:
                ca = self.ref(where + ".courant_algebra", "courant_algebras", spec["courant_algebra"])
            else:
                ca = lz.hemisemidirect(g, lz.adjoint_module(g))
            rho = [self.section(f"{where}.rho[{i}]", s) for i, s in enumerate(spec.get("rho", []))]
            return act.ExtendedAction(ca, psi, tuple(rho), self.twist(where + ".twist", spec.get("twist")), key)
        except ScenarioError:
            raise
        except (KeyError, ValueError, DiracKitError) as exc:
            raise ScenarioError(where, str(exc)) from None

    def moment_map(self, where, spec) -> act.MomentMap:
        values = [self.scalar(f"{where}.values[{i}]", v) for i, v in enumerate(spec.get("values", []))]
        if not values:
            raise ScenarioError(where, "a moment map needs values")
        return act.MomentMap(tuple(values))

    _REFS = {"structure": "structures", "algebra": None, "action": "actions", "moment_map": "moment_maps",
             "courant_algebra": "courant_algebras", "module": "modules", "map": "maps"}

    def _validate_check(self, where, c):
        for key, table in self._REFS.items():
            if key not in c:
                continue
            if key == "algebra":
                if c[key] not in self.sc.algebras and c[key] not in self.sc.courant_algebras:
                    raise ScenarioError(f"{where}.{key}", f"unknown algebra {c[key]!r}")
            elif c[key] not in getattr(self.sc, table):
                raise ScenarioError(f"{where}.{key}", f"unknown {key.replace('_', ' ')} {c[key]!r}")
        for i, f in enumerate(c.get("functions", [])):
            self.scalar(f"{where}.functions[{i}]", f)


def _json_error(exc: json.JSONDecodeError, text: str) -> ScenarioError:
    offset = len(text[:exc.pos].encode())
    return ScenarioError(f"line {exc.lineno} column {exc.colno}", exc.msg, offset)


def parse_scenario(text: str, name: str = "<scenario>") -> Scenario:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _json_error(exc, text) from None
    try:
        return _Loader(doc, name).load()
    except ScenarioError as exc:
        raise exc.in_file(text) from None


def build_scenario(doc: dict, name: str = "<scenario>") -> Scenario:
    return _Loader(doc, name).load()


def load_scenario(path) -> Scenario:
    path = Path(path)
    return parse_scenario(path.read_text(encoding="utf-8"), path.stem)


def bundled_path(name: str):
    return resources.files("dirackit") / "scenarios" / f"{name}.json"


def load_bundled(name: str) -> Scenario:
    return parse_scenario(bundled_path(name).read_text(encoding="utf-8"), name)


def bundled_document(name: str) -> dict:
    return json.loads(bundled_path(name).read_text(encoding="utf-8"))


# running checks ---------------------------------------------------------------

@dataclass
class CheckOutcome:
    name: str
    kind: str
    status: str  # pass | fail | error
    expected: dict
    observed: dict
    report: Optional[CheckReport] = None
    error: Optional[str] = None
    elapsed: float = 0.0

    @property
    def ok(self):
        return self.status == "pass"

    def to_dict(self):
        out = {"name": self.name, "kind": self.kind, "status": self.status,
               "expected": self.expected, "observed": _jsonable(self.observed),
               "elapsed_ms": round(self.elapsed * 1000, 1)}
        if self.report is not None:
            out["report"] = self.report.to_dict()
            if self.report.locus:
                out["generic_locus"] = [str(p) for p in self.report.locus]
        if self.error:
            out["error"] = self.error
        return out


def _jsonable(obj):
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    return str(obj)


@dataclass
class RunOptions:
    seed: int = 0
    max_degree: int = 2


def _verdict_of(report: CheckReport) -> str:
    return "pass" if report.ok else "fail"


def _algebra(sc: Scenario, key):
    if key in sc.courant_algebras:
        return sc.courant_algebras[key].a
    return sc.algebras[key]


def _run_dirac(sc, c, opts):
    D = sc.structures[c["structure"]]
    rep = validate_dirac(D)
    return rep, {"verdict": _verdict_of(rep), "rank": rep.data["rank"],
                 "isotropic": rep["isotropic"].ok, "involutive": rep["involutive"].ok}


def _functions(sc, c):
    return [parse_scalar(sc.patch, f, env=sc.env) for f in c["functions"]]


def _run_admissible(sc, c, opts):
    D = sc.structures[c["structure"]]
    rep = CheckReport(f"H-admissibility on {D.label}")
    flags = []
    for text, f in zip(c["functions"], _functions(sc, c)):
        v = rep.add(text, admissibility(D, f))
        flags.append(v.ok)
    rep.data["admissible"] = flags
    return rep, {"verdict": _verdict_of(rep), "admissible": flags}


def _run_poisson(sc, c, opts):
    D = sc.structures[c["structure"]]
    fs = _functions(sc, c)
    rep = verify_poisson_algebra(D, fs)
    for i in range(len(fs)):
        for j in range(i + 1, len(fs)):
            sub = admissible_bracket_identity(D, fs[i], fs[j])
            rep.add(f"bracket_identity({c['functions'][i]}, {c['functions'][j]})",
                    Verdict(sub.ok, witness=None if sub.ok else {k: sub[k].witness for k in sub.failed()}))
    return rep, {"verdict": _verdict_of(rep), "table": rep.data["table"]}


def _run_jacobiator(sc, c, opts):
    D = sc.structures[c["structure"]]
    rep = CheckReport(f"Jacobiator vs twist on {D.label}")
    values = []
    for triple in c["triples"]:
        f, g, h = (parse_scalar(sc.patch, t, env=sc.env) for t in triple)
        cyc, hv = jacobiator(D, f, g, h)
        values.append([str(cyc), str(hv)])
        rep.add(f"({', '.join(triple)})", Verdict(cyc == hv, witness=None if cyc == hv else {"jacobi": cyc, "H": hv},
                                                   detail=f"cyclic sum {cyc}"))
    rep.data["values"] = values
    return rep, {"verdict": _verdict_of(rep), "values": values}


def _run_dorfman(sc, c, opts):
    loader = _Loader.__new__(_Loader)
    loader.sc = sc
    H = loader.twist("twist", c.get("twist"))
    s, t = loader.section("s", c["s"]), loader.section("t", c["t"])
    got = dorfman(H, s, t)
    rep = CheckReport("Dorfman bracket")
    if "equals" in c:
        want = loader.section("equals", c["equals"])
        rep.add("value", Verdict(got == want, witness=None if got == want else {"got": got, "want": want}))
    rep.data["bracket"] = {"vector": str(got.vector), "form": str(got.form)}
    return rep, {"verdict": _verdict_of(rep), "bracket": rep.data["bracket"]}


def _run_admissible_pair(sc, c, opts):
    loader = _Loader.__new__(_Loader)
    loader.sc = sc
    H = loader.twist("twist", c.get("twist"))
    s = loader.section("section", c["section"])
    rep = CheckReport("admissible pair")
    v = rep.add("admissible", is_admissible_pair(H, s))
    rep.add("diagonal_iff_admissible", Verdict(adjoint_is_diagonal(H, s).ok == v.ok))
    residual = str(v.witness) if v.witness is not None else "0"
    return rep, {"verdict": _verdict_of(rep), "admissible": v.ok, "residual": residual}


def _run_properties(sc, c, opts):
    rng = random.Random(c.get("seed", opts.seed))
    trials = int(c.get("trials", 10))
    deg = int(c.get("max_degree", opts.max_degree))
    P = sc.patch
    rep = CheckReport(f"random identities on {P} (seed {opts.seed})")
    leib, d2, cartan, integr = None, None, None, None
    for _ in range(trials):
        H = random_twist(rng, P, 1, deg)
        a, b, cc = (random_section(rng, P, 1, deg) for _ in range(3))
        lhs = dorfman(H, a, dorfman(H, b, cc))
        rhs = dorfman(H, dorfman(H, a, b), cc) + dorfman(H, b, dorfman(H, a, cc))
        if leib is None and lhs != rhs:
            leib = {"a": a, "b": b, "c": cc, "H": H.H}
        for k in range(P.dim):
            w = random_form(rng, P, k, deg)
            if d2 is None and exterior_derivative(exterior_derivative(w)):
                d2 = w
            if cartan is None and lie_derivative_form(a.vector, w) != lie_derivative_transport(a.vector, w):
                cartan = {"X": a.vector, "form": w}
        h = random_form(rng, P, 2, deg)
        for twist in (Twist(exterior_derivative(h)), H):
            D = graph_of_two_form(h, twist)
            if integr is None and check_involutive(D).ok != (exterior_derivative(h) == twist.H):
                integr = {"h": h, "H": twist.H}
    rep.add("dorfman_leibniz", Verdict(leib is None, witness=leib, detail=f"{trials} random triples"))
    rep.add("d_squared", Verdict(d2 is None, witness=d2))
    rep.add("cartan_vs_transport", Verdict(cartan is None, witness=cartan))
    rep.add("graph_integrability", Verdict(integr is None, witness=integr))
    return rep, {"verdict": _verdict_of(rep)}


def _run_leibniz(sc, c, opts):
    A = _algebra(sc, c["algebra"])
    rep = CheckReport(f"algebra {c['algebra']}")
    rep.add("leibniz", lz.check_leibniz(A))
    anti = lz.check_antisymmetry(A)
    jac = lz.check_jacobi(A)
    observed = {"leibniz": rep["leibniz"].ok, "antisymmetric": anti.ok, "jacobi": jac.ok}
    if rep["leibniz"].ok:
        Q, proj = lz.squares_ideal_quotient(A)
        rep.add("quotient_is_lie", lz.check_lie(Q))
        rep.add("projection_morphism", lz.check_morphism(proj))
        observed["quotient_dim"] = Q.dim
        rep.data["quotient"] = {"basis": list(Q.basis_names),
                                "constants": [[Q.basis_names[i], Q.basis_names[j], Q.basis_names[k], str(x)]
                                              for i, j, k, x in Q.triples()]}
    rep.data.update(observed)
    observed["verdict"] = _verdict_of(rep)
    return rep, observed


def _run_courant_algebra(sc, c, opts):
    ca = sc.courant_algebras[c["courant_algebra"]]
    rep = lz.check_courant_algebra(ca)
    if ca.module is not None and rep.data["exact"]:
        m = lz.induced_module_action(ca)
        rep.add("induced_action_recovers_module", Verdict(m.action == ca.module.action))
    return rep, {"verdict": _verdict_of(rep), "exact": rep.data["exact"]}


def _run_leibniz_from_equivariant(sc, c, opts):
    h = sc.modules[c["module"]]
    mu = sc.maps[c["map"]]
    rep = CheckReport("Leibniz bracket from an equivariant map")
    A = lz.leibniz_from_equivariant(h, mu)
    rep.add("leibniz", lz.check_leibniz(A))
    rep.add("mu_morphism", lz.check_morphism(lz.LinearMap(A, mu.codomain, mu.images)))
    observed = {"antisymmetric": lz.check_antisymmetry(A).ok}
    observed["verdict"] = _verdict_of(rep)
    return rep, observed


def _run_extension(sc, c, opts):
    ea = sc.actions[c["action"]]
    rep = act.check_extension(ea)
    return rep, {"verdict": _verdict_of(rep), "rho": [_print_section(s) for s in ea.rho]}


def _run_dirac_action(sc, c, opts):
    ea = sc.actions[c["action"]]
    D = sc.structures[c["structure"]]
    a = act.check_dirac_action(ea, D)
    b = act.check_action_equivariance(ea)
    rep = CheckReport(a.title)
    for k, v in a.items.items():
        rep.add(k, v)
    for k, v in b.items.items():
        rep.add(f"equivariance_{k}", v)
    return rep, {"verdict": _verdict_of(rep)}


def _run_moment_map(sc, c, opts):
    rep = act.check_moment_map(sc.actions[c["action"]], sc.moment_maps[c["moment_map"]])
    return rep, {"verdict": _verdict_of(rep)}


def _run_compatible(sc, c, opts):
    rep = act.check_compatible(sc.actions[c["action"]], sc.moment_maps[c["moment_map"]])
    return rep, {"verdict": _verdict_of(rep)}


def _run_pi_mu(sc, c, opts):
    rep = act.pi_mu(sc.actions[c["action"]], sc.moment_maps[c["moment_map"]], sc.structures[c["structure"]])
    observed = {"verdict": _verdict_of(rep)}
    for key in ("bracket_table", "image", "constants_of_motion"):
        if key in rep.data:
            observed[key] = rep.data[key]
    return rep, observed


RUNNERS = {
    "dirac": _run_dirac, "admissible": _run_admissible, "poisson": _run_poisson,
    "jacobiator": _run_jacobiator, "dorfman": _run_dorfman, "admissible_pair": _run_admissible_pair,
    "properties": _run_properties, "leibniz": _run_leibniz, "courant_algebra": _run_courant_algebra,
    "leibniz_from_equivariant": _run_leibniz_from_equivariant, "extension": _run_extension,
    "dirac_action": _run_dirac_action, "moment_map": _run_moment_map, "compatible": _run_compatible,
    "pi_mu": _run_pi_mu,
}


def run_check(sc: Scenario, c: dict, opts: Optional[RunOptions] = None) -> CheckOutcome:
    opts = opts or RunOptions()
    expected = dict(c.get("expect", {"verdict": "pass"}))
    t0 = time.perf_counter()
    try:
        rep, observed = RUNNERS[c["kind"]](sc, c, opts)
    except DiracKitError as exc:
        observed = {"verdict": "error", "failure": str(exc)}
        status = "pass" if expected.get("verdict") == "error" else "error"
        return CheckOutcome(c["name"], c["kind"], status, expected, observed, None, str(exc),
                            time.perf_counter() - t0)
    elapsed = time.perf_counter() - t0
    if not rep.ok:
        first = rep.failed()[0]
        observed["failure"] = f"{first}: {rep[first].detail}" if rep[first].detail else first
    observed = _jsonable(observed)
    mismatched = [k for k, v in expected.items() if observed.get(k) != v]
    status = "pass" if not mismatched else "fail"
    if mismatched:
        rep.data["mismatched"] = {k: {"expected": expected[k], "observed": observed.get(k)} for k in mismatched}
    return CheckOutcome(c["name"], c["kind"], status, expected, observed, rep, None, elapsed)


def run_checks(sc: Scenario, kinds=None, only=None, opts: Optional[RunOptions] = None) -> List[CheckOutcome]:
    out = []
    for c in sc.checks:
        if kinds is not None and c["kind"] not in kinds:
            continue
        if only and c["name"] not in only:
            continue
        out.append(run_check(sc, c, opts))
    return sorted(out, key=lambda o: o.name)


# round trip ---------------------------------------------------------------------

def _print_section(s: GeneralizedSection):
    return {"vector": str(s.vector), "form": str(s.form)}


def canonical_document(sc: Scenario) -> dict:
    """The source document with every symbolic literal replaced by its canonical print."""
    doc = json.loads(json.dumps(sc.doc))
    env = sc.env
    for key in doc.get("scalars", {}):
        doc["scalars"][key] = str(env[key])
    for key in doc.get("forms", {}):
        doc["forms"][key] = str(env[key])
    for key in doc.get("vectors", {}):
        doc["vectors"][key] = str(env[key])
    for key in doc.get("sections", {}):
        doc["sections"][key] = _print_section(sc.sections[key])
    for key, spec in doc.get("structures", {}).items():
        D = sc.structures[key]
        if "twist" in spec:
            spec["twist"] = str(D.twist.H)
        if "graph_of" in spec:
            # recover h from the generators: h_ij = (i_{d_i} h)_j
            n = sc.patch.dim
            h = DifferentialForm(sc.patch, 2, {(i, j): D.generators[i].form.component((j,))
                                               for i in range(n) for j in range(i + 1, n)})
            spec["graph_of"] = str(h)
        elif "bivector" in spec:
            spec["bivector"] = [[str(x) for x in g.vector.components] for g in D.generators]
        elif "generators" in spec:
            spec["generators"] = [_print_section(g) for g in D.generators]
    for key, spec in doc.get("actions", {}).items():
        ea = sc.actions[key]
        spec["psi"] = [str(X) for X in ea.psi.fields]
        if spec.get("kind", "explicit") == "explicit":
            spec["rho"] = [_print_section(s) for s in ea.rho]
            if "twist" in spec:
                spec["twist"] = str(ea.twist.H)
        for lit in ("omega", "h"):
            if lit in spec:
                spec[lit] = str(parse_form(sc.patch, spec[lit], 2, env=env)) if isinstance(spec[lit], str) else spec[lit]
        if "mu" in spec:
            spec["mu"] = [str(parse_scalar(sc.patch, m, env=env)) for m in spec["mu"]]
    for key in doc.get("moment_maps", {}):
        doc["moment_maps"][key]["values"] = [str(v) for v in sc.moment_maps[key].values]
    return doc
