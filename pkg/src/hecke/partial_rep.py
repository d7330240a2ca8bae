"""Partial-representation axioms and the sigma family.

``check_partial_rep`` works for any family ``u: G -> A`` whose values
support ``*`` and ``==``.  For sigma the quantifiers are shrunk using
bi-invariance (sigma_{hxk} = sigma_x):

* ``u(x^-1) u(x) u(y) = u(x^-1) u(xy)``: x over double cosets, y over left cosets yH;
* ``u(x) u(y) u(y^-1) = u(xy) u(y^-1)``: y over double cosets, x over right cosets Hx;
* ``u(x) u(x^-1) u(x) = u(x)``: x over double cosets;
* ``u(x) e_y = e_{xy} u(x)``: x over double cosets, y over left cosets.

``audit_full=True`` walks all of G x G instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Optional

from .algebra import HeckeElement, sigma, star, unit
from .analysis import is_protonormal, is_subnormal
from .errors import PreconditionError, TheoremViolation
from .groups import GroupTable, coset_space, normalizer
from .pair import HeckePair


@dataclass
class PartialRepCheck:
    unit_ok: bool
    left_ok: bool                 # u(x^-1)u(x)u(y) = u(x^-1)u(xy)
    right_ok: bool                # u(x)u(y)u(y^-1) = u(xy)u(y^-1)
    left_witness: Optional[tuple[int, int]] = None
    right_witness: Optional[tuple[int, int]] = None

    @property
    def is_partial_rep(self) -> bool:
        return self.unit_ok and self.left_ok and self.right_ok

    @property
    def witness(self):
        if not self.unit_ok:
            return ("unit", 0)
        if not self.left_ok:
            return ("left",) + self.left_witness
        if not self.right_ok:
            return ("right",) + self.right_witness
        return None


class _Memo:
    """Caches u(x) and products keyed by elements; a checker-local helper."""

    def __init__(self, u: Callable[[int], Any]):
        self.u = u
        self.vals: dict[int, Any] = {}

    def __call__(self, x: int):
        v = self.vals.get(x)
        if v is None:
            v = self.u(x)
            self.vals[x] = v
        return v


def check_partial_rep(u: Callable[[int], Any], G: GroupTable, one: Any,
                      left_pairs: Optional[Iterable[tuple[int, int]]] = None,
                      right_pairs: Optional[Iterable[tuple[int, int]]] = None) -> PartialRepCheck:
    """Check the three partial-representation axioms.

    Pairs default to all of G x G in lexicographic order; the reported
    witness is the first failing pair in iteration order."""
    U = _Memo(u)
    inv, mul = G.inv, G.mul
    allpairs = lambda: ((x, y) for x in range(G.order) for y in range(G.order))
    unit_ok = U(0) == one
    left_w = None
    cache: dict[int, Any] = {}
    for x, y in (left_pairs if left_pairs is not None else allpairs()):
        p = cache.get(x)
        if p is None:
            p = cache[x] = U(inv[x]) * U(x)
        if p * U(y) != U(inv[x]) * U(mul[x][y]):
            left_w = (x, y)
            break
    right_w = None
    cache = {}
    for x, y in (right_pairs if right_pairs is not None else allpairs()):
        p = cache.get(y)
        if p is None:
            p = cache[y] = U(y) * U(inv[y])
        if U(x) * p != U(mul[x][y]) * U(inv[y]):
            right_w = (x, y)
            break
    return PartialRepCheck(unit_ok, left_w is None, right_w is None, left_w, right_w)


def check_commutation(u: Callable[[int], Any], G: GroupTable,
                      pairs: Optional[Iterable[tuple[int, int]]] = None):
    """u(x) e_y = e_{xy} u(x) with e_y = u(y) u(y^-1); returns (ok, witness)."""
    U = _Memo(u)
    inv, mul = G.inv, G.mul
    E: dict[int, Any] = {}

    def e(y):
        v = E.get(y)
        if v is None:
            v = E[y] = U(y) * U(inv[y])
        return v

    it = pairs if pairs is not None else ((x, y) for x in range(G.order) for y in range(G.order))
    for x, y in it:
        if U(x) * e(y) != e(mul[x][y]) * U(x):
            return False, (x, y)
    return True, None


def check_weak(u: Callable[[int], Any], G: GroupTable, xs: Optional[Iterable[int]] = None):
    """u(x) u(x^-1) u(x) = u(x); returns (ok, first failing x)."""
    inv = G.inv
    for x in (xs if xs is not None else range(G.order)):
        ux = u(x)
        if ux * u(inv[x]) * ux != ux:
            return False, x
    return True, None


# --- sigma-specific sweeps ------------------------------------------------------

def sigma_family(pair: HeckePair) -> Callable[[int], HeckeElement]:
    """x -> sigma_x, memoized per double coset."""
    basis = {}

    def u(x):
        i = pair.dc_of[x]
        b = basis.get(i)
        if b is None:
            b = basis[i] = sigma(pair, x)
        return b
    return u


def _reduced_pairs(pair: HeckePair):
    left_reps = coset_space(pair.H, "left").reps
    dcs = pair.dc_reps
    rcs = pair.rc_reps
    left = [(x, y) for x in dcs for y in left_reps]
    right = [(x, y) for y in dcs for x in rcs]
    right.sort()
    return left, right, left_reps


def check_sigma(pair: HeckePair, audit_full: bool = False) -> PartialRepCheck:
    u = sigma_family(pair)
    if audit_full:
        return check_partial_rep(u, pair.G, unit(pair))
    left, right, _ = _reduced_pairs(pair)
    return check_partial_rep(u, pair.G, unit(pair), left, right)


def check_sigma_weak(pair: HeckePair, audit_full: bool = False):
    xs = range(pair.G.order) if audit_full else pair.dc_reps
    return check_weak(sigma_family(pair), pair.G, xs)


def check_sigma_commutation(pair: HeckePair, audit_full: bool = False):
    u = sigma_family(pair)
    if audit_full:
        return check_commutation(u, pair.G)
    _, _, left_reps = _reduced_pairs(pair)
    return check_commutation(u, pair.G, [(x, y) for x in pair.dc_reps for y in left_reps])


def kernel(u: Callable[[int], Any], G: GroupTable, one: Any) -> list[int]:
    return [x for x in range(G.order) if u(x) == one]


def indicator_rep(pair: HeckePair) -> Callable[[int], int]:
    """u(x) = 1 if x in H else 0, valued in Q (as ints)."""
    s = pair.H.set
    return lambda x: 1 if x in s else 0


@dataclass
class EquivalenceReport:
    is_protonormal: bool
    is_partial_rep: bool
    weak_identity: bool
    protonormal_witness: Optional[int]
    partial_rep_witness: Optional[tuple]
    weak_witness: Optional[int]
    commutation_ok: Optional[bool] = None
    idempotents_ok: Optional[bool] = None
    kernel_is_H: Optional[bool] = None
    audit: dict = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return self.is_protonormal == self.is_partial_rep == self.weak_identity


def equivalence_suite(pair: HeckePair, audit_full: bool = False, strict: bool = True,
                      extras: bool = True) -> EquivalenceReport:
    """Protonormality vs the partial-rep axioms for sigma vs the weak identity.

    With ``strict`` a disagreement raises TheoremViolation."""
    G, H = pair.G, pair.H
    proto, pw = is_protonormal(G, H, pair.dc_reps)
    chk = check_sigma(pair)
    weak, ww = check_sigma_weak(pair)
    rep = EquivalenceReport(proto, chk.is_partial_rep, weak, pw, chk.witness, ww)
    if strict and not rep.consistent:
        raise TheoremViolation(
            f"protonormal={proto} partial_rep={chk.is_partial_rep} weak={weak} disagree")
    # star(sigma_x) = sigma_{x^-1} swaps the two one-sided axioms, so they
    # must pass or fail together; both were checked independently above
    if strict and chk.left_ok != chk.right_ok:
        raise TheoremViolation("one-sided axioms disagree despite star(sigma_x) = sigma_{x^-1}")
    if extras and chk.is_partial_rep:
        rep.commutation_ok = check_sigma_commutation(pair)[0]
        u = sigma_family(pair)
        rep.idempotents_ok = all(
            (lambda e: e * e == e)(u(x) * u(G.inv[x])) for x in pair.dc_reps)
        rep.kernel_is_H = kernel(u, G, unit(pair)) == list(H.elements)
        if strict and not (rep.commutation_ok and rep.idempotents_ok and rep.kernel_is_H):
            raise TheoremViolation("partial-representation consequences failed")
    if audit_full:
        full = check_sigma(pair, audit_full=True)
        fw, _ = check_sigma_weak(pair, audit_full=True)
        rep.audit = {"partial_rep": full.is_partial_rep, "weak_identity": fw}
        if strict and (full.is_partial_rep != chk.is_partial_rep or fw != weak):
            raise TheoremViolation("reduced and full quantifier sweeps disagree")
    return rep


@dataclass
class FurtherReport:
    partial_rep: bool
    left_normalizing: bool        # xH in Hx  =>  s_x s_x^-1 = 1 and s_x s_y = s_xy
    right_normalizing: bool       # Hx in xH  =>  s_x^-1 s_x = 1 and s_y s_x = s_yx
    normalizer_invertible: bool
    bi_invariant: bool
    witness: Optional[tuple] = None

    @property
    def ok(self) -> bool:
        return (self.partial_rep and self.left_normalizing and self.right_normalizing
                and self.normalizer_invertible and self.bi_invariant)


def further_properties(pair: HeckePair) -> FurtherReport:
    """Consequences of the product relations, for subnormal H."""
    G, H = pair.G, pair.H
    if not is_subnormal(G, H)[0]:
        raise PreconditionError("H is not subnormal")
    u = sigma_family(pair)
    one = unit(pair)
    mul, inv = G.mul, G.inv
    hs = H.set
    wit = None

    pr = check_sigma(pair).is_partial_rep

    def xH_in_Hx(x):
        return all(mul[mul[x][h]][inv[x]] in hs for h in H)

    def Hx_in_xH(x):
        return all(mul[mul[inv[x]][h]][x] in hs for h in H)

    left_ok = True
    for x in range(G.order):
        if xH_in_Hx(x):
            if u(x) * u(inv[x]) != one or any(u(x) * u(y) != u(mul[x][y]) for y in range(G.order)):
                left_ok, wit = False, ("left", x)
                break
    right_ok = True
    for x in range(G.order):
        if Hx_in_xH(x):
            if u(inv[x]) * u(x) != one or any(u(y) * u(x) != u(mul[y][x]) for y in range(G.order)):
                right_ok, wit = False, ("right", x)
                break
    norm_ok = True
    for x in normalizer(H):
        if u(x) * u(inv[x]) != one or u(inv[x]) * u(x) != one:
            norm_ok, wit = False, ("normalizer", x)
            break
        if star(u(x)) != u(inv[x]):
            norm_ok, wit = False, ("normalizer", x)
            break
    # operators built from each element's own representative family, so this
    # is a real check rather than a lookup by double coset
    from .module_space import sigma_op
    bi_ok = all(sigma_op(pair, mul[mul[h][x]][k]) == sigma_op(pair, x)
                for x in pair.dc_reps for h in H for k in H)
    if not bi_ok and wit is None:
        wit = ("bi-invariance",)
    return FurtherReport(pr, left_ok, right_ok, norm_ok, bi_ok, wit)
