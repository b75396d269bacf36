"""Finite-dimensional Leibniz, Lie and Courant algebras over the rationals.

Algebras are given by structure constants ``c[i][j][k]`` with
``[e_i, e_j] = sum_k c[i][j][k] e_k``; every identity is checked exhaustively
on basis tuples, which suffices by multilinearity.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, List, Optional, Sequence

from .errors import PreconditionError
from .linalg import eliminate
from .report import CheckReport, Verdict

Vector = tuple


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _zeros(n) -> Vector:
    return (Fraction(0),) * n


def unit(n, i) -> Vector:
    return tuple(Fraction(1) if k == i else Fraction(0) for k in range(n))


def vadd(u, v) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v) -> Vector:
    return tuple(c * a for a in v)


def _tensor(n, m, p, entries=()):
    t = [[[Fraction(0)] * p for _ in range(m)] for _ in range(n)]
    for i, j, k, c in entries:
        t[i][j][k] += _q(c)
    return t


def _freeze(t):
    return tuple(tuple(tuple(_q(x) for x in row) for row in plane) for plane in t)


@dataclass(frozen=True)
class FiniteLeibnizAlgebra:
    """Structure constants; nothing is validated (use :func:`check_leibniz`)."""

    basis_names: tuple
    constants: tuple
    name: str = ""

    def __post_init__(self):
        names = tuple(self.basis_names)
        object.__setattr__(self, "basis_names", names)
        n = len(names)
        if len(set(names)) != n:
            raise ValueError(f"basis names are not distinct: {names}")
        c = _freeze(self.constants)
        if len(c) != n or any(len(p) != n or any(len(r) != n for r in p) for p in c):
            raise ValueError(f"structure constants must have shape {n}x{n}x{n}")
        object.__setattr__(self, "constants", c)

    @classmethod
    def from_triples(cls, names, triples, name=""):
        """``triples`` are ``(i, j, k, c)``: [e_i, e_j] has c on e_k."""
        n = len(names)
        return cls(tuple(names), _tensor(n, n, n, triples), name)

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    def basis(self, i) -> Vector:
        return unit(self.dim, i)

    def bracket(self, u: Sequence, v: Sequence) -> Vector:
        n = self.dim
        out = [Fraction(0)] * n
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if not vj:
                    continue
                row = self.constants[i][j]
                w = ui * vj
                for k in range(n):
                    if row[k]:
                        out[k] += w * row[k]
        return tuple(out)

    def triples(self):
        """Nonzero structure constants as ``(i, j, k, c)``."""
        n = self.dim
        return [(i, j, k, self.constants[i][j][k])
                for i, j, k in product(range(n), repeat=3) if self.constants[i][j][k]]

    def with_constant(self, i, j, k, value) -> "FiniteLeibnizAlgebra":
        t = [[list(r) for r in p] for p in self.constants]
        t[i][j][k] = _q(value)
        return FiniteLeibnizAlgebra(self.basis_names, t, self.name)

    def format_vector(self, v) -> str:
        terms = [f"{c}*{nm}" if c != 1 else nm for c, nm in zip(v, self.basis_names) if c]
        return " + ".join(terms) if terms else "0"


class FiniteLieAlgebra(FiniteLeibnizAlgebra):
    """A Leibniz algebra whose bracket is antisymmetric and satisfies Jacobi."""

    def __post_init__(self):
        super().__post_init__()
        v = check_lie(self)
        if not v:
            raise PreconditionError(f"not a Lie algebra: {v.detail}", witness=v.witness)

    @classmethod
    def from_triples(cls, names, triples, name="", antisymmetrize=True):
        """With ``antisymmetrize`` each triple (i, j, k, c) also sets [e_j, e_i] = -c e_k."""
        n = len(names)
        entries = list(triples)
        if antisymmetrize:
            entries += [(j, i, k, -_q(c)) for i, j, k, c in triples if i != j]
        return cls(tuple(names), _tensor(n, n, n, entries), name)


def _first_bad(pairs, test):
    for args in pairs:
        residual = test(*args)
        if any(residual):
            return args, residual
    return None


def check_leibniz(A: FiniteLeibnizAlgebra) -> Verdict:
    """[a,[b,c]] = [[a,b],c] + [b,[a,c]] on every basis triple."""
    B = [A.basis(i) for i in range(A.dim)]
    br = A.bracket

    def residual(i, j, k):
        a, b, c = B[i], B[j], B[k]
        return vsub(br(a, br(b, c)), vadd(br(br(a, b), c), br(b, br(a, c))))

    bad = _first_bad(product(range(A.dim), repeat=3), residual)
    if bad:
        (i, j, k), r = bad
        nm = A.basis_names
        return Verdict(False, witness={"triple": (nm[i], nm[j], nm[k]), "residual": A.format_vector(r)},
                       detail=f"Leibniz identity fails on ({nm[i]}, {nm[j]}, {nm[k]})")
    return Verdict(True, detail=f"{A.dim ** 3} basis triples")


def check_antisymmetry(A: FiniteLeibnizAlgebra) -> Verdict:
    B = [A.basis(i) for i in range(A.dim)]
    bad = _first_bad(((i, j) for i in range(A.dim) for j in range(i, A.dim)),
                     lambda i, j: vadd(A.bracket(B[i], B[j]), A.bracket(B[j], B[i])))
    if bad:
        (i, j), r = bad
        nm = A.basis_names
        return Verdict(False, witness={"pair": (nm[i], nm[j]), "[a,b]+[b,a]": A.format_vector(r)},
                       detail=f"[{nm[i]}, {nm[j]}] + [{nm[j]}, {nm[i]}] = {A.format_vector(r)}")
    return Verdict(True)


def check_jacobi(A: FiniteLeibnizAlgebra) -> Verdict:
    B = [A.basis(i) for i in range(A.dim)]
    br = A.bracket

    def residual(i, j, k):
        a, b, c = B[i], B[j], B[k]
        return vadd(vadd(br(a, br(b, c)), br(b, br(c, a))), br(c, br(a, b)))

    bad = _first_bad(product(range(A.dim), repeat=3), residual)
    if bad:
        (i, j, k), r = bad
        nm = A.basis_names
        return Verdict(False, witness={"triple": (nm[i], nm[j], nm[k]), "jacobiator": A.format_vector(r)},
                       detail=f"Jacobi fails on ({nm[i]}, {nm[j]}, {nm[k]})")
    return Verdict(True)


def check_lie(A: FiniteLeibnizAlgebra) -> Verdict:
    v = check_antisymmetry(A)
    return v if not v else check_jacobi(A)


@dataclass(frozen=True)
class LinearMap:
    """``images[i]`` is the image of the i-th domain basis vector."""

    domain: object
    codomain: object
    images: tuple

    def __post_init__(self):
        imgs = tuple(tuple(_q(x) for x in v) for v in self.images)
        if len(imgs) != self.domain.dim or any(len(v) != self.codomain.dim for v in imgs):
            raise ValueError(f"map needs {self.domain.dim} images of length {self.codomain.dim}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def from_matrix(cls, domain, codomain, matrix):
        """``matrix`` has one row per codomain basis vector."""
        return cls(domain, codomain, tuple(zip(*matrix)) if matrix else ())

    @classmethod
    def identity(cls, A):
        return cls(A, A, tuple(unit(A.dim, i) for i in range(A.dim)))

    @classmethod
    def zero(cls, A, B):
        return cls(A, B, tuple(_zeros(B.dim) for _ in range(A.dim)))

    def matrix(self):
        return [list(r) for r in zip(*self.images)] if self.images else []

    def __call__(self, v: Sequence) -> Vector:
        out = _zeros(self.codomain.dim)
        for c, img in zip(v, self.images):
            if c:
                out = vadd(out, vscale(c, img))
        return out

    def rank(self) -> int:
        m = self.matrix()
        return eliminate(m, ncols=self.domain.dim, zero=Fraction(0), one=Fraction(1)).rank if m else 0

    def kernel(self) -> List[Vector]:
        m = self.matrix()
        if not m:
            return [unit(self.domain.dim, i) for i in range(self.domain.dim)]
        E = eliminate(m, ncols=self.domain.dim, zero=Fraction(0), one=Fraction(1))
        return [tuple(v) for v in E.nullspace()]

    def with_entry(self, i, k, value) -> "LinearMap":
        imgs = [list(v) for v in self.images]
        imgs[i][k] = _q(value)
        return LinearMap(self.domain, self.codomain, imgs)


def check_morphism(f: LinearMap) -> Verdict:
    """f([a, b]) = [f(a), f(b)] on basis pairs."""
    A, B = f.domain, f.codomain
    for i, j in product(range(A.dim), repeat=2):
        a, b = A.basis(i), A.basis(j)
        r = vsub(f(A.bracket(a, b)), B.bracket(f(a), f(b)))
        if any(r):
            nm = A.basis_names
            return Verdict(False, witness={"pair": (nm[i], nm[j]), "residual": B.format_vector(r)},
                           detail=f"f([{nm[i]}, {nm[j]}]) != [f({nm[i]}), f({nm[j]})]")
    return Verdict(True, detail=f"{A.dim ** 2} basis pairs")


def _span_basis(vectors, n):
    """RREF basis (rows) and pivot columns of the span of ``vectors``."""
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return [], []
    E = eliminate([list(v) for v in vectors], ncols=n, zero=Fraction(0), one=Fraction(1))
    return [tuple(r) for r in E.rows[:E.rank]], list(E.pivot_cols)


def squares_ideal(A: FiniteLeibnizAlgebra):
    """RREF basis and pivot columns of the two-sided ideal generated by all [a, a]."""
    n = A.dim
    B = [A.basis(i) for i in range(n)]
    gens = [vadd(A.bracket(B[i], B[j]), A.bracket(B[j], B[i])) for i in range(n) for j in range(i, n)]
    basis, pivots = _span_basis(gens, n)
    while True:
        grown = basis + [A.bracket(e, v) for v in basis for e in B] + [A.bracket(v, e) for v in basis for e in B]
        new_basis, new_pivots = _span_basis(grown, n)
        if len(new_basis) == len(basis):
            return basis, pivots
        basis, pivots = new_basis, new_pivots


def squares_ideal_quotient(A: FiniteLeibnizAlgebra):
    """The Lie algebra A / I, I generated by squares, and the projection A -> A / I."""
    n = A.dim
    B = [A.basis(i) for i in range(n)]
    basis, pivots = squares_ideal(A)
    free = [c for c in range(n) if c not in pivots]

    def reduce(v):
        v = list(v)
        for row, pc in zip(basis, pivots):
            if v[pc]:
                c = v[pc]
                v = [a - c * b for a, b in zip(v, row)]
        return tuple(v[c] for c in free)

    names = tuple(A.basis_names[c] for c in free)
    consts = [[list(reduce(A.bracket(B[a], B[b]))) for b in free] for a in free]
    Q = FiniteLieAlgebra(names, consts, f"{A.name}/I" if A.name else "quotient")
    proj = LinearMap(A, Q, tuple(reduce(B[i]) for i in range(n)))
    return Q, proj


@dataclass(frozen=True)
class GModule:
    """A g-module of dimension ``dim``: ``action[i][j][k]`` is the e_k-coefficient of xi_i . eta_j."""

    g: FiniteLieAlgebra
    basis_names: tuple
    action: tuple
    check: bool = True

    def __post_init__(self):
        names = tuple(self.basis_names)
        object.__setattr__(self, "basis_names", names)
        a = _freeze(self.action)
        m = len(names)
        if len(a) != self.g.dim or any(len(p) != m or any(len(r) != m for r in p) for p in a):
            raise ValueError(f"action tensor must have shape {self.g.dim}x{m}x{m}")
        object.__setattr__(self, "action", a)
        if self.check:
            v = check_module(self)
            if not v:
                raise PreconditionError(f"not a g-module: {v.detail}", witness=v.witness)

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    def basis(self, j) -> Vector:
        return unit(self.dim, j)

    def act(self, xi: Sequence, eta: Sequence) -> Vector:
        out = [Fraction(0)] * self.dim
        for i, x in enumerate(xi):
            if not x:
                continue
            for j, y in enumerate(eta):
                if not y:
                    continue
                row = self.action[i][j]
                for k, c in enumerate(row):
                    if c:
                        out[k] += x * y * c
        return tuple(out)

    def format_vector(self, v) -> str:
        return FiniteLeibnizAlgebra.format_vector(self, v)


def check_module(h: GModule) -> Verdict:
    """[xi, xi'] . eta = xi . (xi' . eta) - xi' . (xi . eta)."""
    g = h.g
    for i, k, j in product(range(g.dim), range(g.dim), range(h.dim)):
        x, y, e = g.basis(i), g.basis(k), h.basis(j)
        r = vsub(h.act(g.bracket(x, y), e), vsub(h.act(x, h.act(y, e)), h.act(y, h.act(x, e))))
        if any(r):
            return Verdict(False, witness={"xi": g.basis_names[i], "xi'": g.basis_names[k],
                                           "eta": h.basis_names[j], "residual": h.format_vector(r)},
                           detail="module identity fails")
    return Verdict(True)


def adjoint_module(g: FiniteLieAlgebra, suffix="'") -> GModule:
    return GModule(g, tuple(n + suffix for n in g.basis_names), g.constants)


def trivial_module(g: FiniteLieAlgebra, names) -> GModule:
    m = len(names)
    return GModule(g, tuple(names), _tensor(g.dim, m, m))


def leibniz_from_equivariant(h: GModule, mu: LinearMap) -> FiniteLeibnizAlgebra:
    """[eta, eta'] = mu(eta') . eta, for mu with mu(xi . eta) = [mu(eta), xi]."""
    g = h.g
    for i, j in product(range(g.dim), range(h.dim)):
        xi, eta = g.basis(i), h.basis(j)
        r = vsub(mu(h.act(xi, eta)), g.bracket(mu(eta), xi))
        if any(r):
            w = {"xi": g.basis_names[i], "eta": h.basis_names[j], "residual": g.format_vector(r)}
            raise PreconditionError(f"mu is not equivariant on ({w['xi']}, {w['eta']})", witness=w)
    m = h.dim
    consts = [[list(h.act(mu(h.basis(b)), h.basis(a))) for b in range(m)] for a in range(m)]
    return FiniteLeibnizAlgebra(h.basis_names, consts, "leibniz(mu)")


@dataclass(frozen=True)
class CourantAlgebraSpec:
    """A Leibniz algebra ``a`` with a bracket-preserving map ``pi`` onto a Lie algebra ``g``."""

    a: FiniteLeibnizAlgebra
    g: FiniteLieAlgebra
    pi: LinearMap
    module: Optional[GModule] = None  # set for hemisemidirect products

    @property
    def kernel(self) -> List[Vector]:
        return self.pi.kernel()

    def lift(self, i) -> Vector:
        """Some a with pi(a) = e_i."""
        m = self.pi.matrix()
        E = eliminate(m, ncols=self.a.dim, zero=Fraction(0), one=Fraction(1))
        x = E.solve(list(unit(self.g.dim, i)))
        if x is None:
            raise PreconditionError(f"pi is not onto: no lift of {self.g.basis_names[i]}")
        return tuple(x)

    def kernel_coordinates(self, v) -> Optional[Vector]:
        """Coordinates of ``v`` in :attr:`kernel`, or None if v is not in the kernel."""
        K = self.kernel
        if not K:
            return () if not any(v) else None
        cols = [list(r) for r in zip(*K)]
        x = eliminate(cols, ncols=len(K), zero=Fraction(0), one=Fraction(1)).solve(list(v))
        return tuple(x) if x is not None else None

    def pi_bar(self, v) -> Vector:
        """For g + h: (xi, eta) -> (0, xi), the kernel copy of pi(v)."""
        if self.module is None or self.module.dim != self.g.dim:
            raise PreconditionError("pi_bar needs the g + g hemisemidirect algebra")
        n = self.g.dim
        return _zeros(n) + tuple(self.pi(v))


def hemisemidirect(g: FiniteLieAlgebra, h: GModule) -> CourantAlgebraSpec:
    """g + h with (xi, eta).(xi', eta') = ([xi, xi'], xi . eta'), projecting onto g."""
    n, m = g.dim, h.dim
    entries = [(i, j, k, c) for i, j, k, c in g.triples()]
    for i, j, k in product(range(n), range(m), range(m)):
        c = h.action[i][j][k]
        if c:
            entries.append((i, n + j, n + k, c))
    a = FiniteLeibnizAlgebra.from_triples(g.basis_names + h.basis_names, entries,
                                          f"hemisemidirect({g.name or 'g'})")
    pi = LinearMap(a, g, tuple(unit(n, i) for i in range(n)) + tuple(_zeros(n) for _ in range(m)))
    return CourantAlgebraSpec(a, g, pi, h)


def check_courant_algebra(ca: CourantAlgebraSpec) -> CheckReport:
    rep = CheckReport("Courant algebra")
    rep.add("leibniz", check_leibniz(ca.a))
    rep.add("morphism", check_morphism(ca.pi))
    r = ca.pi.rank()
    rep.add("surjective", Verdict(r == ca.g.dim, witness=None if r == ca.g.dim else {"rank": r},
                                  detail=f"rank {r} of {ca.g.dim}"))
    K = ca.kernel
    wit = None
    for u, v in product(K, repeat=2):
        w = ca.a.bracket(u, v)
        if any(w):
            wit = {"u": ca.a.format_vector(u), "v": ca.a.format_vector(v), "[u,v]": ca.a.format_vector(w)}
            break
    rep.add("abelian_kernel", Verdict(wit is None, witness=wit, detail=f"kernel dim {len(K)}"))
    rep.data["exact"] = rep["surjective"].ok and rep["abelian_kernel"].ok
    return rep


def induced_module_action(ca: CourantAlgebraSpec) -> GModule:
    """xi . eta = [a, eta] for any lift pi(a) = xi; lift independence is verified."""
    g = ca.g
    K = ca.kernel
    m = len(K)
    t = _tensor(g.dim, m, m)
    for i in range(g.dim):
        lifts = [ca.lift(i)] + [vadd(ca.lift(i), k) for k in K]
        for j, eta in enumerate(K):
            images = [ca.a.bracket(lift, eta) for lift in lifts]
            if any(img != images[0] for img in images):
                raise PreconditionError("action depends on the lift: the kernel is not abelian",
                                        witness={"xi": g.basis_names[i], "eta": ca.a.format_vector(eta)})
            coords = ca.kernel_coordinates(images[0])
            if coords is None:
                raise PreconditionError("[a, eta] leaves the kernel",
                                        witness={"xi": g.basis_names[i], "eta": ca.a.format_vector(eta)})
            for k, c in enumerate(coords):
                t[i][j][k] = c
    names = tuple(ca.a.format_vector(v) for v in K)
    return GModule(g, names, t)


def check_equivariant(h: GModule, target_action: Callable, v: Sequence) -> Verdict:
    """v(xi . eta) = target_action(i, v(eta)) on basis pairs; v is given on the basis of h."""
    if len(v) != h.dim:
        raise ValueError(f"need {h.dim} values, got {len(v)}")

    def extend(coeffs):
        out = None
        for c, obj in zip(coeffs, v):
            term = obj * c
            out = term if out is None else out + term
        return out

    for i, j in product(range(h.g.dim), range(h.dim)):
        lhs = extend(h.act(h.g.basis(i), h.basis(j)))
        rhs = target_action(i, v[j])
        if lhs != rhs:
            return Verdict(False, witness={"xi": h.g.basis_names[i], "eta": h.basis_names[j],
                                           "lhs": lhs, "rhs": rhs},
                           detail=f"v({h.g.basis_names[i]}.{h.basis_names[j]}) = {lhs} but action gives {rhs}")
    return Verdict(True, detail=f"{h.g.dim * h.dim} basis pairs")


def sl2() -> FiniteLieAlgebra:
    """Basis (e, f, h): [e,f] = h, [h,e] = 2e, [h,f] = -2f."""
    return FiniteLieAlgebra.from_triples(("e", "f", "h"), [(0, 1, 2, 1), (2, 0, 0, 2), (2, 1, 1, -2)], "sl2")


def heisenberg() -> FiniteLieAlgebra:
    """Basis (x, y, z): [x, y] = z."""
    return FiniteLieAlgebra.from_triples(("x", "y", "z"), [(0, 1, 2, 1)], "heis")


def abelian(n: int, names=None) -> FiniteLieAlgebra:
    names = tuple(names) if names else tuple(f"e{i + 1}" for i in range(n))
    return FiniteLieAlgebra(names, _tensor(n, n, n), f"abelian{n}")
