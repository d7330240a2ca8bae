"""Exact row reduction over the rationals.

Vectors are plain sequences of Fractions.  Dimensions in this toolkit are
tiny (at most a few dozen), so dense Gauss-Jordan is the right tool.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = Sequence[Fraction]


def rref(rows: Sequence[Vector]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form of ``rows``; returns (nonzero rows, pivot columns)."""
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [v / piv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Vector]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Vector], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : rows @ v = 0}."""
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


class Subspace:
    """A subspace of F^n held in reduced echelon form."""

    def __init__(self, vectors: Sequence[Vector], n: int):
        self.n = n
        self.basis, self.pivots = rref(vectors) if vectors else ([], [])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, v: Vector) -> list[Fraction] | None:
        """Coordinates of v in ``self.basis``, or None when v is outside the span."""
        c = [v[p] for p in self.pivots]
        for i in range(self.n):
            s = sum((ci * b[i] for ci, b in zip(c, self.basis) if ci), Fraction(0))
            if s != v[i]:
                return None
        return c

    def __contains__(self, v: Vector) -> bool:
        return self.coords(v) is not None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.n == other.n and self.pivots == other.pivots and self.basis == other.basis

    def intersect(self, other: "Subspace") -> "Subspace":
        if self == other:
            return self
        # solve sum a_i u_i = sum b_j v_j
        k = self.dim
        cols = [list(u) for u in self.basis] + [[-x for x in v] for v in other.basis]
        if not cols:
            return Subspace([], self.n)
        mat = [[cols[j][i] for j in range(len(cols))] for i in range(self.n)]
        vecs = []
        for sol in nullspace(mat, len(cols)):
            vecs.append([sum((sol[j] * self.basis[j][i] for j in range(k)), Fraction(0))
                         for i in range(self.n)])
        return Subspace(vecs, self.n)
