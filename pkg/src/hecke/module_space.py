"""The coset module F(G/H) and the operators acting on it.

Basis vectors are indexed by right cosets ``Ht`` (in the order of
``pair.rc_reps``).  An operator is stored column by column: column ``j`` is
the image of the j-th basis vector.  Matrices are dense, but products only
walk nonzero entries, which matters because averaging operators are sparse.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import PreconditionError, TheoremViolation
from .groups import (SubgroupRef, conjugate_subgroup, coset_space, intersection,
                     is_rep_family, rep_family, set_product, subgroups_commute)
from .linalg import rank
from .pair import HeckePair
from .rational import ZERO, checked_all

_ONE = Fraction(1)


class ModuleVector:
    __slots__ = ("pair", "coeffs")

    def __init__(self, pair: HeckePair, coeffs: Sequence[Fraction]):
        if len(coeffs) != pair.index:
            raise ValueError("vector length does not match [G:H]")
        self.pair = pair
        self.coeffs = checked_all(Fraction(c) for c in coeffs)

    @classmethod
    def basis(cls, pair: HeckePair, i: int) -> "ModuleVector":
        v = [ZERO] * pair.index
        v[i] = _ONE
        return cls(pair, v)

    @classmethod
    def delta(cls, pair: HeckePair, t: int) -> "ModuleVector":
        """Basis vector of the right coset containing element t."""
        return cls.basis(pair, pair.rc_of[t])

    def __add__(self, other):
        return ModuleVector(self.pair, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        return ModuleVector(self.pair, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, c) -> "ModuleVector":
        c = Fraction(c)
        return ModuleVector(self.pair, [c * a for a in self.coeffs])

    def __eq__(self, other) -> bool:
        return isinstance(other, ModuleVector) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"ModuleVector({[str(c) for c in self.coeffs]})"


class ModuleOperator:
    __slots__ = ("pair", "cols", "_nz")

    def __init__(self, pair: HeckePair, cols: Sequence[Sequence[Fraction]]):
        n = pair.index
        if len(cols) != n or any(len(c) != n for c in cols):
            raise ValueError("operator shape does not match [G:H]")
        self.pair = pair
        self.cols = tuple(checked_all(c) for c in cols)
        self._nz = None

    @classmethod
    def from_columns_sparse(cls, pair: HeckePair, cols: Sequence[dict]) -> "ModuleOperator":
        n = pair.index
        dense = []
        for c in cols:
            col = [ZERO] * n
            for i, v in c.items():
                col[i] = v
            dense.append(col)
        return cls(pair, dense)

    @classmethod
    def identity(cls, pair: HeckePair) -> "ModuleOperator":
        return cls.from_columns_sparse(pair, [{j: _ONE} for j in range(pair.index)])

    @property
    def nonzero(self):
        if self._nz is None:
            self._nz = tuple(tuple((i, v) for i, v in enumerate(c) if v) for c in self.cols)
        return self._nz

    def entry(self, row: int, col: int) -> Fraction:
        return self.cols[col][row]

    def rows(self) -> list[list[Fraction]]:
        n = self.pair.index
        return [[self.cols[j][i] for j in range(n)] for i in range(n)]

    def __matmul__(self, other: "ModuleOperator") -> "ModuleOperator":
        """Composition ``self o other``."""
        a_nz = self.nonzero
        out = []
        for col in other.nonzero:
            acc: dict[int, Fraction] = {}
            for k, bk in col:
                for i, a in a_nz[k]:
                    acc[i] = acc.get(i, ZERO) + a * bk
            out.append(acc)
        return ModuleOperator.from_columns_sparse(self.pair, out)

    __mul__ = __matmul__

    def apply(self, v: ModuleVector) -> ModuleVector:
        out = [ZERO] * self.pair.index
        for j, vj in enumerate(v.coeffs):
            if vj:
                for i, a in self.nonzero[j]:
                    out[i] += a * vj
        return ModuleVector(self.pair, out)

    def __add__(self, other):
        return ModuleOperator(self.pair, [[a + b for a, b in zip(c, d)]
                                          for c, d in zip(self.cols, other.cols)])

    def __sub__(self, other):
        return ModuleOperator(self.pair, [[a - b for a, b in zip(c, d)]
                                          for c, d in zip(self.cols, other.cols)])

    def scale(self, c) -> "ModuleOperator":
        c = Fraction(c)
        return ModuleOperator(self.pair, [[c * a for a in col] for col in self.cols])

    def __eq__(self, other) -> bool:
        return isinstance(other, ModuleOperator) and self.cols == other.cols

    def __hash__(self):
        return hash(self.cols)

    def is_identity(self) -> bool:
        return all(v == (i == j) for j, c in enumerate(self.cols) for i, v in enumerate(c))

    def rank(self) -> int:
        return rank(self.cols)

    def __repr__(self) -> str:
        return f"ModuleOperator({self.pair.index}x{self.pair.index})"


def _average_op(pair: HeckePair, image_elems) -> ModuleOperator:
    """Operator whose column for Ht averages the basis vectors at ``image_elems(t)``."""
    rc_of = pair.rc_of
    cols = []
    for t in pair.rc_reps:
        elems = image_elems(t)
        w = Fraction(1, len(elems))
        acc: dict[int, Fraction] = {}
        for e in elems:
            i = rc_of[e]
            acc[i] = acc.get(i, ZERO) + w
        cols.append(acc)
    return ModuleOperator.from_columns_sparse(pair, cols)


def sigma_family(pair: HeckePair, x: int) -> list[int]:
    H = pair.H
    return rep_family(H, intersection(H, conjugate_subgroup(H, x)))


def sigma_op(pair: HeckePair, x: int, reps: Sequence[int] | None = None) -> ModuleOperator:
    """Hecke operator: delta_{Ht} goes to the average of delta_{Hxht}, h over a
    family of representatives for H/(H cap H^x).  ``reps`` overrides the
    default (least-index) family and is validated."""
    G, H = pair.G, pair.H
    if reps is None:
        S = sigma_family(pair, x)
    else:
        S = list(reps)
        if not is_rep_family(H, intersection(H, conjugate_subgroup(H, x)), S):
            raise ValueError("reps is not a family of representatives for H/(H cap H^x)")
    mul = G.mul
    xs = [mul[x][h] for h in S]
    return _average_op(pair, lambda t: [mul[xh][t] for xh in xs])


def sigma_op_alt(pair: HeckePair, x: int) -> ModuleOperator:
    """Same operator built from representatives of (H^x H)/H^x; needs H^x H = H H^x."""
    G, H = pair.G, pair.H
    Hx = conjugate_subgroup(H, x)
    ok, _ = subgroups_commute(Hx, H)
    if not ok:
        raise PreconditionError(f"H^x and H do not commute for x={x}; H^x H is not a group")
    K = SubgroupRef(G, tuple(set_product(G, Hx, H)))
    T = rep_family(K, Hx)
    mul = G.mul
    xs = [mul[x][k] for k in T]
    return _average_op(pair, lambda t: [mul[xk][t] for xk in xs])


def rho_op(pair: HeckePair, g: int) -> ModuleOperator:
    """Right multiplication: delta_{Ht} goes to delta_{Htg}."""
    mul = pair.G.mul
    return _average_op(pair, lambda t: [mul[t][g]])


def hermitian_form(xi: ModuleVector, eta: ModuleVector) -> Fraction:
    """Delta-weighted diagonal form; conjugation on Q is the identity."""
    pair = xi.pair
    total = ZERO
    for i, (a, b) in enumerate(zip(xi.coeffs, eta.coeffs)):
        if a and b:
            total += a * b * pair.delta_of(pair.rc_reps[i])
    return total


def gram_matrix(pair: HeckePair) -> list[list[Fraction]]:
    n = pair.index
    return [[pair.delta_of(pair.rc_reps[i]) if i == j else ZERO for j in range(n)]
            for i in range(n)]


def mu_average(pair: HeckePair, S: Iterable[int]) -> ModuleVector:
    """Average of the basis vectors of the right cosets Hs, s in S."""
    idx = sorted({pair.rc_of[s] for s in S})
    if not idx:
        raise ValueError("mu_average of an empty set")
    v = [ZERO] * pair.index
    w = Fraction(1, len(idx))
    for i in idx:
        v[i] = w
    return ModuleVector(pair, v)


def _require_commute(pair: HeckePair, K: SubgroupRef) -> None:
    ok, wit = subgroups_commute(pair.H, K)
    if not ok:
        raise PreconditionError(f"K does not commute with H (witness {wit})")


def q_element(pair: HeckePair, K: SubgroupRef) -> ModuleVector:
    """Average of the right cosets of H inside HK."""
    _require_commute(pair, K)
    S = rep_family(K, intersection(pair.H, K))
    return mu_average(pair, S)


def Q_operator(pair: HeckePair, K: SubgroupRef) -> ModuleOperator:
    """delta_{Hx} goes to rho_x(q_K); idempotent."""
    _require_commute(pair, K)
    S = rep_family(K, intersection(pair.H, K))
    mul = pair.G.mul
    Q = _average_op(pair, lambda t: [mul[k][t] for k in S])
    if Q @ Q != Q:
        raise TheoremViolation("Q_K is not idempotent")
    return Q


class QuotientMap:
    """Linearized quotient F(G/H) -> F(G/HK)."""

    def __init__(self, pair: HeckePair, K: SubgroupRef):
        _require_commute(pair, K)
        G = pair.G
        self.pair = pair
        self.HK = SubgroupRef(G, tuple(set_product(G, pair.H, K)))
        self.target = coset_space(self.HK, "right")
        self.image = tuple(self.target.block_of[t] for t in pair.rc_reps)
        self.dim = len(self.target.reps)

    def apply(self, v: ModuleVector) -> tuple[Fraction, ...]:
        out = [ZERO] * self.dim
        for i, c in enumerate(v.coeffs):
            if c:
                out[self.image[i]] += c
        return tuple(out)

    def matrix(self) -> list[list[Fraction]]:
        rows = [[ZERO] * self.pair.index for _ in range(self.dim)]
        for j, i in enumerate(self.image):
            rows[i][j] = Fraction(1)
        return rows

    def delta(self, x: int) -> tuple[Fraction, ...]:
        out = [ZERO] * self.dim
        out[self.target.block_of[x]] = Fraction(1)
        return tuple(out)


def pi_tilde(pair: HeckePair, K: SubgroupRef) -> QuotientMap:
    """Quotient map, checked: pi o Q_K = pi and pi is injective on range(Q_K)."""
    pm = QuotientMap(pair, K)
    Q = Q_operator(pair, K)
    for j in range(pair.index):
        col = ModuleVector(pair, Q.cols[j])
        if pm.apply(col) != pm.apply(ModuleVector.basis(pair, j)):
            raise TheoremViolation("pi o Q_K differs from pi")
    # range(Q) has dimension rank(Q); pi is injective there iff rank(pi Q) = rank(Q)
    images = [pm.apply(ModuleVector(pair, c)) for c in Q.cols]
    rq = Q.rank()
    if rank(images) != rq or rq != pm.dim:
        raise TheoremViolation("pi restricted to range(Q_K) is not an isomorphism")
    return pm


def three_subgroup_identity(pair: HeckePair, K: SubgroupRef, L: SubgroupRef):
    """Both sides of pi(q_L) = mu(HKL/HK), computed independently."""
    pm = pi_tilde(pair, K)
    lhs = pm.apply(q_element(pair, L))
    _, wit = subgroups_commute(K, L)
    if wit is not None:
        raise PreconditionError("K and L do not commute")
    G = pair.G
    HKL = set_product(G, pm.HK.elements, L.elements)
    blocks = sorted({pm.target.block_of[g] for g in HKL})
    rhs = [ZERO] * pm.dim
    for b in blocks:
        rhs[b] = Fraction(1, len(blocks))
    return lhs, tuple(rhs)
