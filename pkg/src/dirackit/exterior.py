"""Exterior calculus on a coordinate patch.

Forms are stored sparsely on strictly increasing 0-based index tuples; every
sign comes from the parity of the permutation that sorts a multi-index.
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterable, Mapping

from .scalar import Patch, ScalarField


def sort_with_sign(indices):
    """Sort ``indices``; return ``(sign, sorted_tuple)``, sign 0 on a repeat."""
    idx = list(indices)
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(idx, idx[1:]):
        if a == b:
            return 0, tuple(idx)
    return sign, tuple(idx)


class VectorField:
    """A derivation sum_i X^i d/dx^i with rational-function components."""

    __slots__ = ("patch", "components")

    def __init__(self, patch: Patch, components: Iterable):
        comps = tuple(c if isinstance(c, ScalarField) else patch.const(c) for c in components)
        if len(comps) != patch.dim:
            raise ValueError(f"vector field needs {patch.dim} components, got {len(comps)}")
        object.__setattr__(self, "patch", patch)
        object.__setattr__(self, "components", comps)

    def __setattr__(self, key, value):
        raise AttributeError("VectorField is immutable")

    @classmethod
    def zero(cls, patch):
        return cls(patch, [patch.zero] * patch.dim)

    @classmethod
    def coordinate(cls, patch, i):
        """The coordinate field d/dx^i."""
        return cls(patch, [patch.one if j == i else patch.zero for j in range(patch.dim)])

    def __call__(self, f: ScalarField) -> ScalarField:
        """Directional derivative X(f)."""
        out = self.patch.zero
        for i, c in enumerate(self.components):
            if c:
                d = f.diff(i)
                if d:
                    out = out + c * d
        return out

    def is_zero(self):
        return not any(self.components)

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return VectorField(self.patch, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return VectorField(self.patch, [a - b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return VectorField(self.patch, [-a for a in self.components])

    def __mul__(self, f):
        if isinstance(f, (VectorField, DifferentialForm)):
            return NotImplemented
        return VectorField(self.patch, [a * f for a in self.components])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.patch == other.patch and self.components == other.components

    def __hash__(self):
        return hash(("vf", self.components))

    def __str__(self):
        names = self.patch.coordinate_names
        terms = [(c, "@" + n) for c, n in zip(self.components, names) if c]
        return _join_terms(terms)

    def __repr__(self):
        return f"VectorField({str(self)!r})"


def _join_terms(terms):
    if not terms:
        return "0"
    parts = []
    for c, basis in terms:
        if c == 1:
            parts.append(("+", basis))
        elif c == -1:
            parts.append(("-", basis))
        elif len(c.num) == 1:
            s = str(c)
            sign = "-" if s.startswith("-") else "+"
            parts.append((sign, s.lstrip("-") + "*" + basis))
        else:
            parts.append(("+", f"({c})*{basis}"))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


class DifferentialForm:
    """A homogeneous differential form of a fixed degree."""

    __slots__ = ("patch", "degree", "_coeffs")

    def __init__(self, patch: Patch, degree: int, coeffs: Mapping = ()):
        if degree < 0:
            raise ValueError("negative degree")
        store = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for idx, c in items:
            sign, key = sort_with_sign(idx)
            if len(key) != degree:
                raise ValueError(f"index {idx} does not have length {degree}")
            if key and (key[0] < 0 or key[-1] >= patch.dim):
                raise ValueError(f"index {idx} out of range for dim {patch.dim}")
            if sign == 0:
                continue
            if not isinstance(c, ScalarField):
                c = patch.const(c)
            store[key] = store[key] + sign * c if key in store else sign * c
        object.__setattr__(self, "patch", patch)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "_coeffs", {k: v for k, v in store.items() if v})

    def __setattr__(self, key, value):
        raise AttributeError("DifferentialForm is immutable")

    @classmethod
    def _trusted(cls, patch, degree, store):
        obj = object.__new__(cls)
        object.__setattr__(obj, "patch", patch)
        object.__setattr__(obj, "degree", degree)
        object.__setattr__(obj, "_coeffs", {k: v for k, v in store.items() if v})
        return obj

    @classmethod
    def zero(cls, patch, degree):
        return cls._trusted(patch, degree, {})

    @classmethod
    def function(cls, f: ScalarField):
        return cls._trusted(f.patch, 0, {(): f})

    @classmethod
    def coordinate(cls, patch, i):
        """The 1-form dx^i."""
        return cls._trusted(patch, 1, {(i,): patch.one})

    @property
    def coefficients(self):
        return dict(self._coeffs)

    def items(self):
        return sorted(self._coeffs.items())

    def component(self, indices) -> ScalarField:
        """Value on the coordinate fields ``indices`` (any order)."""
        sign, key = sort_with_sign(indices)
        if sign == 0 or key not in self._coeffs:
            return self.patch.zero
        c = self._coeffs[key]
        return c if sign > 0 else -c

    def as_function(self) -> ScalarField:
        if self.degree != 0:
            raise ValueError(f"degree-{self.degree} form is not a function")
        return self._coeffs.get((), self.patch.zero)

    def is_zero(self):
        return not self._coeffs

    def __bool__(self):
        return bool(self._coeffs)

    def _check(self, other):
        if not isinstance(other, DifferentialForm):
            return False
        if other.patch != self.patch:
            raise ValueError("forms live on different patches")
        if other.degree != self.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        store = dict(self._coeffs)
        for k, v in other._coeffs.items():
            store[k] = store[k] + v if k in store else v
        return DifferentialForm._trusted(self.patch, self.degree, store)

    def __neg__(self):
        return DifferentialForm._trusted(self.patch, self.degree, {k: -v for k, v in self._coeffs.items()})

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return self + (-other)

    def __mul__(self, f):
        if isinstance(f, DifferentialForm):
            return wedge(self, f)
        if isinstance(f, VectorField):
            return NotImplemented
        return DifferentialForm._trusted(self.patch, self.degree, {k: v * f for k, v in self._coeffs.items()})

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        return (self.patch == other.patch and self.degree == other.degree
                and self._coeffs == other._coeffs)

    def __hash__(self):
        return hash(("form", self.degree, frozenset(self._coeffs.items())))

    def __str__(self):
        names = self.patch.coordinate_names
        if self.degree == 0:
            return str(self.as_function())
        terms = [(c, "^".join("d" + names[i] for i in k)) for k, c in self.items()]
        return _join_terms(terms)

    def __repr__(self):
        return f"DifferentialForm[{self.degree}]({str(self)!r})"


def wedge(a: DifferentialForm, b: DifferentialForm) -> DifferentialForm:
    if a.patch != b.patch:
        raise ValueError("forms live on different patches")
    degree = a.degree + b.degree
    store = {}
    if degree <= a.patch.dim:
        for ka, ca in a._coeffs.items():
            for kb, cb in b._coeffs.items():
                sign, key = sort_with_sign(ka + kb)
                if sign == 0:
                    continue
                term = ca * cb if sign > 0 else -(ca * cb)
                store[key] = store[key] + term if key in store else term
    return DifferentialForm._trusted(a.patch, degree, store)


def exterior_derivative(a: DifferentialForm) -> DifferentialForm:
    patch = a.patch
    store = {}
    if a.degree < patch.dim:
        for key, c in a._coeffs.items():
            for j in range(patch.dim):
                if j in key:
                    continue
                dc = c.diff(j)
                if not dc:
                    continue
                sign, k = sort_with_sign((j,) + key)
                term = dc if sign > 0 else -dc
                store[k] = store[k] + term if k in store else term
    return DifferentialForm._trusted(patch, a.degree + 1, store)


def interior_product(X: VectorField, a: DifferentialForm) -> DifferentialForm:
    """Contraction i_X a, inserting X into the first slot."""
    if a.degree == 0:
        raise ValueError("interior product of a 0-form is undefined")
    if X.patch != a.patch:
        raise ValueError("vector field and form live on different patches")
    store = {}
    for key, c in a._coeffs.items():
        for r, i in enumerate(key):
            xi = X.components[i]
            if not xi:
                continue
            k = key[:r] + key[r + 1:]
            term = xi * c if r % 2 == 0 else -(xi * c)
            store[k] = store[k] + term if k in store else term
    return DifferentialForm._trusted(a.patch, a.degree - 1, store)


def evaluate(a: DifferentialForm, *vectors: VectorField) -> ScalarField:
    """a(X_1, ..., X_k) = i_{X_k} ... i_{X_1} a."""
    if len(vectors) != a.degree:
        raise ValueError(f"a {a.degree}-form takes {a.degree} arguments")
    out = a
    for X in vectors:
        out = interior_product(X, out)
    return out.as_function()


def lie_derivative_form(X: VectorField, a: DifferentialForm) -> DifferentialForm:
    """L_X a by Cartan's formula i_X d a + d i_X a."""
    if a.degree == 0:
        return DifferentialForm.function(X(a.as_function()))
    out = exterior_derivative(interior_product(X, a))
    if a.degree < a.patch.dim:
        out = out + interior_product(X, exterior_derivative(a))
    return out


def lie_derivative_transport(X: VectorField, a: DifferentialForm) -> DifferentialForm:
    """L_X a from the coordinate transport formula.

    (L_X a)_I = X(a_I) + sum_r sum_j a_{i_1..j..i_k} d_{i_r} X^j, with j in slot r.
    Independent of :func:`lie_derivative_form`; used to cross-check it.
    """
    patch = a.patch
    n = patch.dim
    dX = [[X.components[j].diff(i) for j in range(n)] for i in range(n)]  # dX[i][j] = d_i X^j
    store = {}
    for key in combinations(range(n), a.degree):
        total = X(a.component(key))
        for r, i in enumerate(key):
            for j in range(n):
                if not dX[i][j]:
                    continue
                c = a.component(key[:r] + (j,) + key[r + 1:])
                if c:
                    total = total + c * dX[i][j]
        if total:
            store[key] = total
    return DifferentialForm._trusted(patch, a.degree, store)


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """[X, Y]^i = X(Y^i) - Y(X^i)."""
    if X.patch != Y.patch:
        raise ValueError("vector fields live on different patches")
    return VectorField(X.patch, [X(yi) - Y(xi) for xi, yi in zip(X.components, Y.components)])


def lie_derivative_vector(X: VectorField, Y: VectorField) -> VectorField:
    return lie_bracket(X, Y)


def function_differential(f: ScalarField) -> DifferentialForm:
    return exterior_derivative(DifferentialForm.function(f))


def is_closed(a: DifferentialForm) -> bool:
    return a.degree >= a.patch.dim or exterior_derivative(a).is_zero()
