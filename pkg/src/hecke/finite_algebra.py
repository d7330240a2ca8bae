"""Finite-dimensional algebras over Q given by basis products.

Used as the target of homomorphisms out of the Hecke algebra and as the
concrete model of crossed products.  Vectors are tuples of Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional, Sequence

from .rational import ZERO, checked_all

Vec = tuple


class FiniteAlgebra:
    """Algebra with basis e_0..e_{d-1}; ``product(i, j)`` returns e_i e_j as a vector.

    Basis products are memoized on first use.  ``star_images`` (optional)
    gives e_i^* for a conjugate-linear (here: linear) involution."""

    def __init__(self, dim: int, product: Callable[[int, int], Sequence[Fraction]],
                 unit: Sequence[Fraction], star_images: Optional[Sequence[Sequence[Fraction]]] = None,
                 name: str = ""):
        self.dim = dim
        self._product = product
        self._table: dict[tuple[int, int], tuple] = {}
        self._sparse: dict[tuple[int, int], tuple] = {}
        self.unit_vec = tuple(Fraction(v) for v in unit)
        self.star_images = None if star_images is None else [tuple(v) for v in star_images]
        self.name = name

    def zero(self) -> Vec:
        return (ZERO,) * self.dim

    def unit(self) -> Vec:
        return self.unit_vec

    def basis_vec(self, i: int) -> Vec:
        v = [ZERO] * self.dim
        v[i] = Fraction(1)
        return tuple(v)

    def basis_product(self, i: int, j: int) -> Vec:
        key = (i, j)
        out = self._table.get(key)
        if out is None:
            out = checked_all(self._product(i, j))
            if len(out) != self.dim:
                raise ValueError("basis product has the wrong length")
            self._table[key] = out
        return out

    def _sparse_product(self, i: int, j: int) -> tuple:
        key = (i, j)
        out = self._sparse.get(key)
        if out is None:
            out = self._sparse[key] = tuple((k, p) for k, p in enumerate(self.basis_product(i, j)) if p)
        return out

    def mul(self, u: Vec, v: Vec) -> Vec:
        acc = [ZERO] * self.dim
        vs = [(j, b) for j, b in enumerate(v) if b]
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in vs:
                c = a * b
                for k, p in self._sparse_product(i, j):
                    acc[k] += c * p
        return checked_all(acc)

    def add(self, u: Vec, v: Vec) -> Vec:
        return tuple(a + b for a, b in zip(u, v))

    def sub(self, u: Vec, v: Vec) -> Vec:
        return tuple(a - b for a, b in zip(u, v))

    def scale(self, c, u: Vec) -> Vec:
        c = Fraction(c)
        return tuple(c * a for a in u)

    def star(self, u: Vec) -> Vec:
        if self.star_images is None:
            raise ValueError("algebra has no involution")
        acc = [ZERO] * self.dim
        for i, a in enumerate(u):
            if a:
                for k, p in enumerate(self.star_images[i]):
                    if p:
                        acc[k] += a * p
        return tuple(acc)

    def _triple(self, i: int, j: int, k: int, left: bool) -> dict:
        acc: dict[int, Fraction] = {}
        first = self._sparse_product(i, j) if left else self._sparse_product(j, k)
        for l, c in first:
            for z, p in (self._sparse_product(l, k) if left else self._sparse_product(i, l)):
                acc[z] = acc.get(z, ZERO) + c * p
        return {z: v for z, v in acc.items() if v}

    def associativity_witness(self) -> Optional[tuple[int, int, int]]:
        """First basis triple with (e_i e_j) e_k != e_i (e_j e_k), or None."""
        d = self.dim
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    if self._triple(i, j, k, True) != self._triple(i, j, k, False):
                        return i, j, k
        return None

    def unit_witness(self) -> Optional[int]:
        u = self.unit_vec
        for i in range(self.dim):
            e = self.basis_vec(i)
            if self.mul(u, e) != e or self.mul(e, u) != e:
                return i
        return None


def trivial_algebra() -> FiniteAlgebra:
    """The field Q itself."""
    return FiniteAlgebra(1, lambda i, j: (Fraction(1),), (Fraction(1),),
                         star_images=[(Fraction(1),)], name="Q")
