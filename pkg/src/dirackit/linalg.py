"""Gauss-Jordan elimination over an exact field.

Entries may be :class:`fractions.Fraction` or :class:`~dirackit.scalar.ScalarField`
(the field of rational functions).  Only ``+ - * /`` and truthiness (nonzero)
are used.  Over the rational-function field every verdict is *generic*: it
holds away from the zero sets of the pivots used, which are collected in
``locus`` so that reports can state them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence

from .scalar import ScalarField


def _pivot_cost(x):
    if isinstance(x, ScalarField):
        return (0 if x.is_constant() else 1, x.size())
    return (0, 0)


def _locus_factors(pivots):
    out = []
    for p in pivots:
        if isinstance(p, ScalarField) and not p.is_constant():
            for part in (ScalarField(p.patch, p.num.monic()), ScalarField(p.patch, p.den)):
                if not part.is_constant() and part not in out:
                    out.append(part)
    return out


@dataclass
class Elimination:
    """Reduced row echelon form of ``A`` plus the transform ``T`` with ``T A = R``."""

    rows: List[list]
    transform: List[list]
    pivot_cols: List[int]
    pivots: list
    ncols: int
    zero: object
    one: object
    locus: list = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.pivot_cols)

    def apply(self, b: Sequence):
        """T b."""
        z = self.zero
        out = []
        for trow in self.transform:
            acc = z
            for t, bi in zip(trow, b):
                if t and bi:
                    acc = acc + t * bi
            out.append(acc)
        return out

    def solve(self, b: Sequence):
        """A particular solution of ``A x = b`` (free variables 0), or None."""
        tb = self.apply(b)
        r = self.rank
        if any(tb[r:]):
            return None
        x = [self.zero] * self.ncols
        for i, c in enumerate(self.pivot_cols):
            x[c] = tb[i]
        return x

    def inconsistency(self, b: Sequence):
        """Entries of ``T b`` below the pivot rows; all zero iff ``A x = b`` is solvable."""
        return self.apply(b)[self.rank:]

    def nullspace(self):
        free = [c for c in range(self.ncols) if c not in self.pivot_cols]
        basis = []
        for fcol in free:
            v = [self.zero] * self.ncols
            v[fcol] = self.one
            for i, pc in enumerate(self.pivot_cols):
                entry = self.rows[i][fcol]
                if entry:
                    v[pc] = -entry
            basis.append(v)
        return basis


def eliminate(matrix: Sequence[Sequence], ncols: Optional[int] = None, zero=None, one=None,
              cost: Callable = _pivot_cost) -> Elimination:
    m = len(matrix)
    if ncols is None:
        ncols = len(matrix[0]) if m else 0
    sample = next((x for row in matrix for x in row if isinstance(x, ScalarField)), None)
    if zero is None:
        zero = sample.patch.zero if sample is not None else Fraction(0)
    if one is None:
        one = sample.patch.one if sample is not None else Fraction(1)
    rows = [list(r) for r in matrix]
    T = [[one if i == j else zero for j in range(m)] for i in range(m)]
    pivot_cols, pivots = [], []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        candidates = [i for i in range(r, m) if rows[i][c]]
        if not candidates:
            continue
        p = min(candidates, key=lambda i: cost(rows[i][c]))
        rows[r], rows[p] = rows[p], rows[r]
        T[r], T[p] = T[p], T[r]
        pv = rows[r][c]
        pivots.append(pv)
        if not (pv == 1):
            inv = one / pv
            rows[r] = [x * inv if x else x for x in rows[r]]
            T[r] = [x * inv if x else x for x in T[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b if b else a for a, b in zip(rows[i], rows[r])]
                T[i] = [a - f * b if b else a for a, b in zip(T[i], T[r])]
        pivot_cols.append(c)
        r += 1
    return Elimination(rows, T, pivot_cols, pivots, ncols, zero, one, _locus_factors(pivots))


def rank(matrix, **kw) -> int:
    return eliminate(matrix, **kw).rank


def solve(matrix, b, **kw):
    return eliminate(matrix, **kw).solve(b)


def nullspace(matrix, **kw):
    return eliminate(matrix, **kw).nullspace()


def independent_subset(vectors: Sequence[Sequence], **kw) -> List[int]:
    """Indices of a maximal linearly independent subfamily, greedy in order."""
    if not vectors:
        return []
    cols = list(map(list, zip(*vectors)))  # vectors as columns
    return eliminate(cols, ncols=len(vectors), **kw).pivot_cols
