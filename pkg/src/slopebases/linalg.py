"""Exact linear algebra over the rationals.

Every routine works on plain Python sequences of ``Fraction`` (or ``int``)
entries.  Row order and pivot order are deterministic, so bases returned
here are reproducible from run to run.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

Vector = Tuple[Fraction, ...]


def as_vector(values) -> Vector:
    return tuple(Fraction(v) for v in values)


def rref(rows: Sequence[Sequence], ncols: int) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form.  Returns the nonzero rows and pivot columns."""
    mat = [[Fraction(x) for x in r] for r in rows]
    pivots: List[int] = []
    r = 0
    nrows = len(mat)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((k for k in range(r, nrows) if mat[k][c] != 0), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        inv = 1 / mat[r][c]
        row = [x * inv for x in mat[r]]
        mat[r] = row
        for k in range(nrows):
            if k != r and mat[k][c] != 0:
                factor = mat[k][c]
                mat[k] = [a - factor * b for a, b in zip(mat[k], row)]
        pivots.append(c)
        r += 1
    return mat[:r], pivots


def rank(rows: Sequence[Sequence], ncols: Optional[int] = None) -> int:
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> List[Vector]:
    """Basis of {x : rows . x = 0}, one vector per free column, in column order."""
    red, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[free]
        basis.append(tuple(v))
    return basis


def transpose(mat: Sequence[Sequence]) -> List[List]:
    return [list(col) for col in zip(*mat)] if mat else []


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> List[List[Fraction]]:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def rank_factorization(mat: Sequence[Sequence], ncols: int) -> Tuple[List[Vector], List[Vector]]:
    """Write ``mat = sum_k outer(left[k], right[k])`` with the minimal number of terms.

    ``left`` holds pivot columns of ``mat`` and ``right`` the nonzero rows of its
    reduced echelon form, so both families are linearly independent.
    """
    red, pivots = rref(mat, ncols)
    left = [tuple(Fraction(row[c]) for row in mat) for c in pivots]
    right = [tuple(r) for r in red]
    return left, right


class Subspace:
    """A subspace of Q^n held in reduced echelon form, for membership tests."""

    def __init__(self, vectors: Sequence[Sequence], dim: int):
        self.ambient = dim
        self.rows, self.pivots = rref(list(vectors), dim)

    @classmethod
    def from_echelon(cls, rows, pivots, dim: int) -> "Subspace":
        """Wrap rows that are already in reduced echelon form."""
        out = cls.__new__(cls)
        out.ambient = dim
        out.rows, out.pivots = [list(r) for r in rows], list(pivots)
        return out

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence) -> List[Fraction]:
        w = [Fraction(x) for x in v]
        for row, pc in zip(self.rows, self.pivots):
            if w[pc] != 0:
                f = w[pc]
                w = [a - f * b for a, b in zip(w, row)]
        return w

    def __contains__(self, v) -> bool:
        return not any(self.reduce(v))

    def coordinates(self, v: Sequence) -> Optional[List[Fraction]]:
        """Coordinates of ``v`` in the echelon basis, or None if ``v`` is outside."""
        if any(self.reduce(v)):
            return None
        return [Fraction(v[pc]) for pc in self.pivots]

    def basis(self) -> List[Vector]:
        return [tuple(r) for r in self.rows]


def solve_combination(basis: Sequence[Sequence], v: Sequence) -> Optional[List[Fraction]]:
    """Coefficients ``c`` with ``sum c_k basis[k] == v``; None if no solution.

    ``basis`` must be linearly independent.
    """
    if not basis:
        return [] if not any(v) else None
    n = len(v)
    # augmented system: columns are basis vectors
    rows = [[Fraction(b[i]) for b in basis] + [Fraction(v[i])] for i in range(n)]
    red, pivots = rref(rows, len(basis) + 1)
    if len(basis) in pivots:
        return None
    coeffs = [Fraction(0)] * len(basis)
    for row, pc in zip(red, pivots):
        coeffs[pc] = row[-1]
    return coeffs


def intersect(a: Sequence[Sequence], b: Sequence[Sequence], dim: int) -> List[Vector]:
    """Basis of span(a) ∩ span(b)."""
    if not a or not b:
        return []
    # x in span(a) ∩ span(b)  <=>  x = A s = B t
    cols = list(a) + [[-x for x in v] for v in b]
    rows = transpose(cols)
    ker = nullspace(rows, len(cols))
    out = []
    for k in ker:
        vec = [Fraction(0)] * dim
        for coef, v in zip(k[: len(a)], a):
            if coef:
                vec = [x + coef * y for x, y in zip(vec, v)]
        out.append(vec)
    return Subspace(out, dim).basis()
