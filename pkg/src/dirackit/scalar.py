"""Exact rational functions on a single coordinate patch.

A :class:`ScalarField` is an element of Q(x_1, ..., x_n), kept as a reduced
fraction ``num/den`` of sparse polynomials from :mod:`sympy.polys.rings`.  The
denominator is always monic with respect to the graded-lex order of the
patch's coordinates, so two fields are equal iff their stored numerator and
denominator coincide.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Sequence

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import ring

from .errors import SingularPointError

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@lru_cache(maxsize=None)
def _ring_for(names):
    R, *gens = ring(",".join(names), QQ, grlex)
    return R, tuple(gens)


@dataclass(frozen=True)
class Patch:
    """A single global chart with named coordinates."""

    coordinate_names: tuple

    def __post_init__(self):
        names = tuple(self.coordinate_names)
        object.__setattr__(self, "coordinate_names", names)
        if not names:
            raise ValueError("a patch needs at least one coordinate")
        if len(set(names)) != len(names):
            raise ValueError(f"coordinate names are not distinct: {names}")
        for name in names:
            if not _IDENT.match(name):
                raise ValueError(f"invalid coordinate name {name!r}")
            # "dx" would be ambiguous with the differential of "x" in form literals
            if name.startswith("d") and name[1:] in names:
                raise ValueError(f"coordinate name {name!r} clashes with d{name[1:]}")

    @property
    def dim(self) -> int:
        return len(self.coordinate_names)

    @property
    def ring(self):
        return _ring_for(self.coordinate_names)[0]

    def index(self, name: str) -> int:
        try:
            return self.coordinate_names.index(name)
        except ValueError:
            raise KeyError(f"unknown coordinate {name!r}") from None

    def coordinate(self, i: int) -> "ScalarField":
        return ScalarField._raw(self, _ring_for(self.coordinate_names)[1][i], self.ring.one)

    def coordinates(self):
        return tuple(self.coordinate(i) for i in range(self.dim))

    def const(self, value) -> "ScalarField":
        R = self.ring
        q = Fraction(value)
        return ScalarField._raw(self, R(QQ(q.numerator, q.denominator)), R.one)

    @property
    def zero(self) -> "ScalarField":
        return ScalarField._raw(self, self.ring.zero, self.ring.one)

    @property
    def one(self) -> "ScalarField":
        return ScalarField._raw(self, self.ring.one, self.ring.one)

    def point(self, *coords) -> "RationalPoint":
        return RationalPoint(self, tuple(Fraction(c) for c in coords))

    def __str__(self):
        return "(" + ", ".join(self.coordinate_names) + ")"


@dataclass(frozen=True)
class RationalPoint:
    patch: Patch
    coordinates: tuple

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coordinates)
        object.__setattr__(self, "coordinates", coords)
        if len(coords) != self.patch.dim:
            raise ValueError(f"point has {len(coords)} coordinates, patch has dim {self.patch.dim}")


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def _eval_poly(p, coords) -> Fraction:
    total = Fraction(0)
    for monom, c in p.items():
        term = _to_fraction(c)
        for v, e in zip(coords, monom):
            if e:
                term *= v ** e
        total += term
    return total


class ScalarField:
    """An exact rational function on a :class:`Patch`.  Immutable."""

    __slots__ = ("patch", "num", "den", "_hash")

    def __init__(self, patch: Patch, num, den=None):
        R = patch.ring
        num = R(num)
        den = R.one if den is None else R(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        n, d = _normalize(num, den)
        self._set(patch, n, d)

    @classmethod
    def _raw(cls, patch, num, den):
        obj = object.__new__(cls)
        obj._set(patch, num, den)
        return obj

    def _set(self, patch, num, den):
        object.__setattr__(self, "patch", patch)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, key, value):
        raise AttributeError("ScalarField is immutable")

    # -- predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_constant(self) -> bool:
        return self.num.is_ground and self.den.is_ground

    def is_polynomial(self) -> bool:
        return self.den.is_ground

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return _to_fraction(self.num.LC) if self.num else Fraction(0)

    def size(self) -> int:
        """Number of stored terms; used to pick cheap pivots."""
        return len(self.num) + len(self.den)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "ScalarField":
        if isinstance(other, ScalarField):
            if other.patch != self.patch:
                raise ValueError(f"patch mismatch: {self.patch} vs {other.patch}")
            return other
        if isinstance(other, (int, Rational)):
            return self.patch.const(Fraction(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            if self.den.is_ground:
                return ScalarField._raw(self.patch, self.num + other.num, self.den)
            return _make(self.patch, self.num + other.num, self.den)
        return _make(self.patch, self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return ScalarField._raw(self.patch, -self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return self.patch.zero
        if self.den.is_ground and other.den.is_ground:
            return ScalarField._raw(self.patch, self.num * other.num, self.den)
        if other.is_constant():
            return ScalarField._raw(self.patch, self.num * other.num.LC, self.den)
        if self.is_constant():
            return ScalarField._raw(self.patch, other.num * self.num.LC, other.den)
        return _make(self.patch, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            raise ZeroDivisionError(f"division by the zero scalar field ({self} / 0)")
        if not self.num:
            return self
        if other.is_constant():
            return ScalarField._raw(self.patch, self.num.quo_ground(other.num.LC), self.den)
        return _make(self.patch, self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.patch.one / (self ** -k)
        return ScalarField._raw(self.patch, self.num ** k, self.den ** k)

    # -- calculus ---------------------------------------------------------

    def diff(self, i: int) -> "ScalarField":
        """Partial derivative with respect to coordinate ``i`` (0-based)."""
        x = _ring_for(self.patch.coordinate_names)[1][i]
        if self.den.is_ground:
            return ScalarField._raw(self.patch, self.num.diff(x), self.den)
        n, d = self.num, self.den
        return _make(self.patch, n.diff(x) * d - n * d.diff(x), d * d)

    def eval_at(self, point: RationalPoint) -> Fraction:
        if point.patch != self.patch:
            raise ValueError("point lives on a different patch")
        d = _eval_poly(self.den, point.coordinates)
        if d == 0:
            raise SingularPointError(f"denominator {self._poly_str(self.den)} vanishes at {point.coordinates}")
        return _eval_poly(self.num, point.coordinates) / d

    # -- identity ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, ScalarField):
            return self.patch == other.patch and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Rational)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            key = (self.patch.coordinate_names, frozenset(self.num.items()), frozenset(self.den.items()))
            object.__setattr__(self, "_hash", hash(key))
        return self._hash

    # -- printing ---------------------------------------------------------

    def _poly_str(self, p) -> str:
        if not p:
            return "0"
        names = self.patch.coordinate_names
        out = []
        for monom, c in p.terms():
            c = _to_fraction(c)
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, monom) if e]
            sign = "-" if c < 0 else "+"
            c = abs(c)
            if not factors:
                body = str(c)
            elif c == 1:
                body = "*".join(factors)
            else:
                body = str(c) + "*" + "*".join(factors)
            out.append((sign, body))
        first_sign, first = out[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    def __str__(self):
        if self.den == self.patch.ring.one:
            return self._poly_str(self.num)
        num = self._poly_str(self.num)
        if len(self.num) > 1:
            num = f"({num})"
        den = self._poly_str(self.den)
        if len(self.den) > 1 or "*" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"ScalarField({str(self)!r})"


def _normalize(num, den):
    if not num:
        return num.ring.zero, num.ring.one
    if den.is_ground:
        c = den.LC
        return (num.quo_ground(c) if c != 1 else num), num.ring.one
    num, den = num.cancel(den)
    c = den.LC
    if c != 1:
        num, den = num.quo_ground(c), den.quo_ground(c)
    return num, den


def _make(patch, num, den) -> ScalarField:
    n, d = _normalize(num, den)
    return ScalarField._raw(patch, n, d)


def add(a: ScalarField, b: ScalarField) -> ScalarField:
    return a + b


def sub(a: ScalarField, b: ScalarField) -> ScalarField:
    return a - b


def mul(a: ScalarField, b: ScalarField) -> ScalarField:
    return a * b


def div(a: ScalarField, b: ScalarField) -> ScalarField:
    return a / b


def partial_derivative(f: ScalarField, i: int) -> ScalarField:
    return f.diff(i)


def eval_at(f: ScalarField, p: RationalPoint) -> Fraction:
    return f.eval_at(p)


def is_zero(f: ScalarField) -> bool:
    return f.is_zero()


def antiderivative_polynomial(f: ScalarField, i: int) -> ScalarField:
    """Polynomial antiderivative in coordinate ``i`` with zero constant of integration."""
    if not f.is_polynomial():
        raise ValueError(f"{f} has no polynomial antiderivative")
    R = f.patch.ring
    terms = {}
    for monom, c in f.num.items():
        m = list(monom)
        m[i] += 1
        terms[tuple(m)] = c / m[i]
    return ScalarField._raw(f.patch, R.from_dict(terms) if terms else R.zero, R.one)


def scalars(patch: Patch, values: Sequence) -> list:
    return [v if isinstance(v, ScalarField) else patch.const(Fraction(v)) for v in values]
