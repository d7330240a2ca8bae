"""Finite groups as multiplication tables, subgroups, and coset spaces.

Elements are integer indices into a :class:`GroupTable`; index 0 is always
the identity.  Everything here is immutable once built.

Coset conventions: a *right* coset is ``Hg``, a *left* coset is ``gH`` and a
*double* coset is ``HgH``.  Representatives are always the smallest element
index in their block, so identical inputs give identical outputs.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Iterable, Literal, Mapping, Sequence

import numpy as np

from .errors import GroupValidationError

DEFAULT_MAX_ORDER = 20000


def max_order() -> int:
    """Order cap for closure-based constructions (env ``HECKE_MAX_ORDER``)."""
    raw = os.environ.get("HECKE_MAX_ORDER")
    return int(raw) if raw else DEFAULT_MAX_ORDER


@dataclass(frozen=True, eq=False)
class GroupTable:
    order: int
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    labels: tuple[str, ...]
    name: str = ""

    identity = 0

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"GroupTable({self.name or 'order ' + str(self.order)})"

    def __iter__(self):
        return iter(range(self.order))

    def m(self, *xs: int) -> int:
        """Product of the given elements, left to right."""
        out = 0
        mul = self.mul
        for x in xs:
            out = mul[out][x]
        return out

    def conj(self, h: int, x: int) -> int:
        """``x^{-1} h x``."""
        return self.mul[self.mul[self.inv[x]][h]][x]

    def label(self, x: int) -> str:
        return self.labels[x]

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = self.mul[y][x]
            k += 1
        return k

    def is_abelian(self) -> bool:
        mul = self.mul
        return all(mul[x][y] == mul[y][x] for x in range(self.order) for y in range(x))

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], labels: Sequence[str] | None = None,
                   name: str = "", check_associative: bool = True) -> "GroupTable":
        """Validate a Cayley table and reindex so the identity sits at 0."""
        n = len(table)
        if n < 1:
            raise GroupValidationError("group table is empty")
        rows = [list(r) for r in table]
        for r in rows:
            if len(r) != n:
                raise GroupValidationError("group table is not square")
            for v in r:
                if not (isinstance(v, (int, np.integer)) and 0 <= v < n):
                    raise GroupValidationError(f"table entry {v!r} out of range")
        ident = next((e for e in range(n)
                      if all(rows[e][x] == x and rows[x][e] == x for x in range(n))), None)
        if ident is None:
            raise GroupValidationError("table has no two-sided identity")
        perm = [ident] + [x for x in range(n) if x != ident]
        pos = {old: new for new, old in enumerate(perm)}
        mul = tuple(tuple(pos[rows[perm[i]][perm[j]]] for j in range(n)) for i in range(n))
        for i in range(n):
            if len(set(mul[i])) != n or len({mul[j][i] for j in range(n)}) != n:
                raise GroupValidationError("table is not a Latin square")
        inv = []
        for x in range(n):
            y = mul[x].index(0)
            if mul[y][x] != 0:
                raise GroupValidationError(f"element {x} has no two-sided inverse")
            inv.append(y)
        if check_associative:
            _check_associative(mul)
        if labels is None:
            labs = tuple(str(perm[i]) for i in range(n))
        else:
            if len(labels) != n:
                raise GroupValidationError("label count does not match order")
            labs = tuple(str(labels[perm[i]]) for i in range(n))
        return cls(n, mul, tuple(inv), labs, name)


def _check_associative(mul) -> None:
    m = np.asarray(mul, dtype=np.int64)
    for x in range(m.shape[0]):
        left = m[m[x], :]          # (x y) z indexed [y, z]
        right = m[x][m]            # x (y z) indexed [y, z]
        if not np.array_equal(left, right):
            y, z = map(int, np.argwhere(left != right)[0])
            raise GroupValidationError(f"table is not associative at ({x}, {y}, {z})")


# --- builders ---------------------------------------------------------------

def cycle_label(perm: Sequence[int]) -> str:
    """Cycle notation with 1-based points; identity prints as ``()``."""
    seen, parts = set(), []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = perm[j]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


def from_permutations(generators: Sequence[Sequence[int]], degree: int | None = None,
                      name: str = "", cap: int | None = None) -> GroupTable:
    """Close a list of 0-based image lists under composition.

    The product ``p*q`` applies ``p`` first, then ``q``.
    """
    cap = max_order() if cap is None else cap
    gens = [tuple(int(v) for v in g) for g in generators]
    if degree is None:
        degree = len(gens[0]) if gens else 0
    for g in gens:
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise GroupValidationError(f"generator {list(g)} is not a permutation of {degree} points")
    ident = tuple(range(degree))
    elems = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[i]] for i in range(degree))
                if q not in index:
                    index[q] = len(elems)
                    elems.append(q)
                    nxt.append(q)
                    if len(elems) > cap:
                        raise GroupValidationError(f"closure exceeds max order {cap}")
        frontier = nxt
    n = len(elems)
    mul = tuple(tuple(index[tuple(q[p[i]] for i in range(degree))] for q in elems)
                for p in elems)
    inv = tuple(mul[x].index(0) for x in range(n))
    return GroupTable(n, mul, inv, tuple(cycle_label(p) for p in elems), name)


def _from_rule(elems: list, op, label, name: str) -> GroupTable:
    index = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    mul = tuple(tuple(index[op(a, b)] for b in elems) for a in elems)
    inv = tuple(mul[x].index(0) for x in range(n))
    return GroupTable(n, mul, inv, tuple(label(e) for e in elems), name)


def _check_param(family: str, n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise GroupValidationError(f"{family}({n!r}): parameter must be a positive integer")


def cyclic(n: int) -> GroupTable:
    _check_param("cyclic", n)
    if n > max_order():
        raise GroupValidationError(f"cyclic({n}) exceeds max order")
    return _from_rule(list(range(n)), lambda a, b: (a + b) % n,
                      lambda a: "1" if a == 0 else ("g" if a == 1 else f"g^{a}"), f"cyclic({n})")


def dihedral(n: int) -> GroupTable:
    """Symmetries of the n-gon, order 2n; elements ``s^j r^i``."""
    _check_param("dihedral", n)
    if 2 * n > max_order():
        raise GroupValidationError(f"dihedral({n}) exceeds max order")
    elems = [(j, i) for j in range(2) for i in range(n)]

    def op(a, b):
        (j1, i1), (j2, i2) = a, b
        return ((j1 + j2) % 2, ((-i1 if j2 else i1) + i2) % n)

    def label(e):
        j, i = e
        rpart = "" if i == 0 else ("r" if i == 1 else f"r^{i}")
        if j == 0:
            return rpart or "1"
        return "s" + (" " + rpart if rpart else "")

    return _from_rule(elems, op, label, f"dihedral({n})")


def symmetric(n: int) -> GroupTable:
    _check_param("symmetric", n)
    if n == 1:
        return from_permutations([], degree=1, name="symmetric(1)")
    gens = [[1, 0] + list(range(2, n)), list(range(1, n)) + [0]]
    return from_permutations(gens, degree=n, name=f"symmetric({n})")


def quaternion(n: int = 8) -> GroupTable:
    if n != 8:
        raise GroupValidationError(f"quaternion({n!r}): only order 8 is provided")
    # unit index: 0=1, 1=i, 2=j, 3=k ; element (sign, unit)
    table = {(0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
             (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
             (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
             (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0)}
    elems = [(s, u) for u in range(4) for s in (1, -1)]

    def op(a, b):
        s, u = table[(a[1], b[1])]
        return (a[0] * b[0] * s, u)

    names = "1ijk"
    return _from_rule(elems, op, lambda e: ("" if e[0] == 1 else "-") + names[e[1]], "quaternion(8)")


def affine_mod(n: int) -> GroupTable:
    """Matrices [[1, b], [0, a]] over Z/n with a a unit; element ``(b, a)``."""
    _check_param("affine_mod", n)
    from math import gcd
    units = [a for a in range(n) if gcd(a, n) == 1] if n > 1 else [0]
    one = 1 % n
    units.sort(key=lambda a: (a != one, a))
    elems = [(b, a) for a in units for b in range(n)]
    if len(elems) > max_order():
        raise GroupValidationError(f"affine_mod({n}) exceeds max order")

    def op(x, y):
        (b1, a1), (b2, a2) = x, y
        return ((b2 + b1 * a2) % n, (a1 * a2) % n)

    return _from_rule(elems, op, lambda e: f"[{e[0]},{e[1]}]", f"affine_mod({n})")


BUILTINS = {
    "cyclic": cyclic,
    "dihedral": dihedral,
    "symmetric": symmetric,
    "quaternion": quaternion,
    "affine_mod": affine_mod,
}


def builtin_order(family: str, n: int) -> int:
    from math import factorial, gcd
    if family == "cyclic":
        return n
    if family == "dihedral":
        return 2 * n
    if family == "symmetric":
        return factorial(n)
    if family == "quaternion":
        return 8
    if family == "affine_mod":
        return n * sum(1 for a in range(n) if gcd(a, n) == 1) if n > 1 else 1
    raise GroupValidationError(f"unknown builtin family {family!r}")


def build_group(spec: Mapping) -> GroupTable:
    """Build a group from a ``table`` / ``perm`` / ``builtin`` description."""
    kind = spec.get("kind")
    if kind == "table":
        mul = spec.get("mul")
        if not isinstance(mul, list):
            raise GroupValidationError("table spec needs a 'mul' list")
        if "order" in spec and spec["order"] != len(mul):
            raise GroupValidationError("'order' does not match table size")
        if len(mul) > max_order():
            raise GroupValidationError("table exceeds max order")
        return GroupTable.from_table(mul, spec.get("labels"), name=spec.get("name", "table"))
    if kind == "perm":
        gens = spec.get("generators")
        if not isinstance(gens, list):
            raise GroupValidationError("perm spec needs a 'generators' list")
        return from_permutations(gens, degree=spec.get("degree"), name=spec.get("name", "perm"))
    if kind == "builtin":
        family = spec.get("family")
        if family not in BUILTINS:
            raise GroupValidationError(f"unknown builtin family {family!r}")
        param = spec.get("param", 8 if family == "quaternion" else None)
        return BUILTINS[family](param)
    raise GroupValidationError(f"unknown group spec kind {kind!r}")


# --- subgroups ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SubgroupRef:
    parent: GroupTable = field(repr=False)
    elements: tuple[int, ...]
    set: frozenset = field(init=False, repr=False)

    def __post_init__(self):
        els = tuple(sorted(set(self.elements)))
        object.__setattr__(self, "elements", els)
        object.__setattr__(self, "set", frozenset(els))
        G = self.parent
        if not els or els[0] != 0:
            raise GroupValidationError("subgroup must contain the identity")
        if els[-1] >= G.order:
            raise GroupValidationError("subgroup element out of range")
        s = self.set
        for a in els:
            if G.inv[a] not in s:
                raise GroupValidationError("subset is not closed under inverses")
            row = G.mul[a]
            for b in els:
                if row[b] not in s:
                    raise GroupValidationError("subset is not closed under multiplication")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.set

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubgroupRef):
            return NotImplemented
        return self.parent is other.parent and self.set == other.set

    def __hash__(self) -> int:
        return hash((id(self.parent), self.elements))

    def __le__(self, other: "SubgroupRef") -> bool:
        return self.set <= other.set

    def labels(self) -> list[str]:
        return [self.parent.labels[x] for x in self.elements]


def whole(G: GroupTable) -> SubgroupRef:
    return SubgroupRef(G, tuple(range(G.order)))


def trivial(G: GroupTable) -> SubgroupRef:
    return SubgroupRef(G, (0,))


def _closure(G: GroupTable, seed: Iterable[int]) -> frozenset:
    elems = {0}
    gens = sorted(set(seed))
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            row = G.mul[a]
            for g in gens:
                b = row[g]
                if b not in elems:
                    elems.add(b)
                    nxt.append(b)
        frontier = nxt
    return frozenset(elems)


def generate_subgroup(G: GroupTable, gens: Iterable[int]) -> SubgroupRef:
    """Smallest subgroup containing ``gens``."""
    gens = list(gens)
    for g in gens:
        if not (isinstance(g, (int, np.integer)) and 0 <= g < G.order):
            raise GroupValidationError(f"generator index {g!r} out of range")
    # finite group: closure under multiplication already contains inverses
    return SubgroupRef(G, tuple(_closure(G, gens)))


def subgroup_from_elements(G: GroupTable, elements: Iterable[int]) -> SubgroupRef:
    els = list(elements)
    for g in els:
        if not (isinstance(g, (int, np.integer)) and 0 <= g < G.order):
            raise GroupValidationError(f"element index {g!r} out of range")
    return SubgroupRef(G, tuple(int(e) for e in els))


def conjugate_subgroup(H: SubgroupRef, x: int) -> SubgroupRef:
    """``H^x = x^{-1} H x``."""
    G = H.parent
    if not 0 <= x < G.order:
        raise GroupValidationError(f"element index {x!r} out of range")
    return SubgroupRef(G, tuple(G.conj(h, x) for h in H))


def intersection(A: SubgroupRef, B: SubgroupRef) -> SubgroupRef:
    return SubgroupRef(A.parent, tuple(A.set & B.set))


def set_product(G: GroupTable, A: Iterable[int], B: Iterable[int]) -> frozenset:
    """``AB = {ab : a in A, b in B}``."""
    B = tuple(B)
    mul = G.mul
    return frozenset(mul[a][b] for a in set(A) for b in B)


def subgroups_commute(A: SubgroupRef, B: SubgroupRef) -> tuple[bool, tuple[int, int] | None]:
    """Whether ``AB = BA``; on failure the lexicographically least (a, b) with ab not in BA."""
    G = A.parent
    if B.parent is not G:
        raise GroupValidationError("subgroups live in different groups")
    BA = set_product(G, B, A)
    mul = G.mul
    for a in A:
        for b in B:
            if mul[a][b] not in BA:
                return False, (a, b)
    # |AB| = |BA|, so AB subset of BA forces equality
    return True, None


def is_normal(H: SubgroupRef, K: SubgroupRef | None = None) -> bool:
    """Whether H is normal in K (default: the whole parent group)."""
    G = H.parent
    pool = range(G.order) if K is None else K.elements
    s = H.set
    return all(G.conj(h, x) in s for x in pool for h in H)


def normalizer(H: SubgroupRef) -> SubgroupRef:
    G = H.parent
    s = H.set
    return SubgroupRef(G, tuple(x for x in range(G.order) if all(G.conj(h, x) in s for h in H)))


def all_subgroups(G: GroupTable) -> list[SubgroupRef]:
    """Every subgroup, ordered by (size, sorted elements)."""
    cyclic_subs = {_closure(G, [x]) for x in range(G.order)}
    found = set(cyclic_subs)
    frontier = set(cyclic_subs)
    while frontier:
        nxt = set()
        for S in frontier:
            for C in cyclic_subs:
                if C <= S:
                    continue
                J = _closure(G, S | C)
                if J not in found:
                    found.add(J)
                    nxt.add(J)
        frontier = nxt
    return [SubgroupRef(G, tuple(s)) for s in sorted(found, key=lambda s: (len(s), sorted(s)))]


# --- coset spaces ---------------------------------------------------------------

Kind = Literal["right", "left", "double"]


@dataclass(frozen=True, eq=False)
class CosetSpace:
    kind: str
    subgroup: SubgroupRef
    blocks: tuple[tuple[int, ...], ...]
    reps: tuple[int, ...]
    block_of: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.blocks)


def _partition(n: int, block_from) -> tuple[tuple, tuple, tuple]:
    block_of = [-1] * n
    blocks = []
    for g in range(n):
        if block_of[g] >= 0:
            continue
        blk = tuple(sorted(block_from(g)))
        for y in blk:
            block_of[y] = len(blocks)
        blocks.append(blk)
    return tuple(blocks), tuple(b[0] for b in blocks), tuple(block_of)


def coset_space(H: SubgroupRef, kind: Kind) -> CosetSpace:
    """Partition the parent group into right, left or double cosets of H."""
    G = H.parent
    mul = G.mul
    if kind == "right":
        fn = lambda g: {mul[h][g] for h in H}
    elif kind == "left":
        fn = lambda g: {mul[g][h] for h in H}
    elif kind == "double":
        def fn(g):
            left = {mul[g][k] for k in H}
            return {mul[h][y] for h in H for y in left}
    else:
        raise ValueError(f"unknown coset kind {kind!r}")
    blocks, reps, block_of = _partition(G.order, fn)
    return CosetSpace(kind, H, blocks, reps, block_of)


def rep_family(H: SubgroupRef, K: SubgroupRef) -> list[int]:
    """One element of H per right coset ``Kh`` of K in H (the least index of each)."""
    if not K.set <= H.set:
        raise GroupValidationError("K is not contained in H")
    G = H.parent
    seen: set[int] = set()
    reps = []
    for h in H:  # ascending, so the first hit is the block minimum
        if h in seen:
            continue
        reps.append(h)
        seen.update(G.mul[k][h] for k in K)
    return reps


def is_rep_family(H: SubgroupRef, K: SubgroupRef, S: Sequence[int]) -> bool:
    """Whether S meets every right coset of K in H exactly once."""
    G = H.parent
    if not set(S) <= H.set:
        return False
    hit: set[int] = set()
    for s in S:
        blk = frozenset(G.mul[k][s] for k in K)
        if blk & hit:
            return False
        hit |= blk
    return hit == H.set


def chain_rep_product(A: SubgroupRef, B: SubgroupRef, C: SubgroupRef) -> list[int]:
    """Products ``b_i c_j`` of representatives for B/A and C/B; a family for C/A."""
    if not (A.set <= B.set <= C.set):
        raise GroupValidationError("chain inclusion A <= B <= C violated")
    G = A.parent
    bs = rep_family(B, A)
    cs = rep_family(C, B)
    fam = [G.mul[b][c] for b in bs for c in cs]
    if len(fam) * len(A) != len(C) or not is_rep_family(C, A, fam):
        raise AssertionError("product family is not a family of representatives")
    return fam


def dedupe_sorted(xs: Iterable[int]) -> list[int]:
    return sorted(set(xs))


def pairs(n: int):
    return itertools.product(range(n), repeat=2)
