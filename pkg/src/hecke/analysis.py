"""Classify a pair (G, H): R and Delta, normal / subnormal / protonormal."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .groups import (GroupTable, SubgroupRef, conjugate_subgroup, generate_subgroup,
                     intersection, is_normal, set_product, subgroups_commute)
from .pair import HeckePair


def hecke_data(G: GroupTable, H: SubgroupRef, pair: HeckePair | None = None):
    """R and Delta keyed by double-coset representative."""
    pair = pair or HeckePair(G, H)
    R = {x: pair.R[i] for i, x in enumerate(pair.dc_reps)}
    Delta = {x: pair.Delta[i] for i, x in enumerate(pair.dc_reps)}
    return R, Delta


def conjugates_commute(H: SubgroupRef, x: int) -> bool:
    return subgroups_commute(conjugate_subgroup(H, x), H)[0]


def is_protonormal(G: GroupTable, H: SubgroupRef, candidates=None) -> tuple[bool, Optional[int]]:
    """Whether H^x H = H H^x for all x.

    Conjugating by h in H carries the condition at x to the one at hx, and
    H^{xk} = k^{-1} H^x k, so one x per double coset is enough.  The witness
    is the least failing element among ``candidates`` (default: double-coset
    representatives, which are block minima, hence the least failing element
    overall)."""
    if candidates is None:
        from .groups import coset_space
        candidates = coset_space(H, "double").reps
    for x in sorted(candidates):
        if not conjugates_commute(H, x):
            return False, x
    return True, None


def is_protonormal_full(G: GroupTable, H: SubgroupRef) -> tuple[bool, Optional[int]]:
    return is_protonormal(G, H, candidates=range(G.order))


def normal_closure(G: GroupTable, H: SubgroupRef) -> SubgroupRef:
    """Subgroup generated by all conjugates x h x^{-1}."""
    Y = {G.conj(h, x) for x in range(G.order) for h in H}
    return generate_subgroup(G, Y)


def subnormal_violation(G: GroupTable, H: SubgroupRef) -> Optional[tuple[int, int, int]]:
    """Least (x, h, k) with (x h x^{-1}) k (x h x^{-1})^{-1} outside H, if any."""
    mul, inv = G.mul, G.inv
    s = H.set
    for x in range(G.order):
        for h in H:
            c = mul[mul[x][h]][inv[x]]
            ci = inv[c]
            for k in H:
                if mul[mul[c][k]][ci] not in s:
                    return x, h, k
    return None


def is_subnormal(G: GroupTable, H: SubgroupRef):
    """(flag, N, triple): H is subnormal iff it is normal in its normal closure N."""
    N = normal_closure(G, H)
    if is_normal(H, N):
        return True, N, None
    return False, N, subnormal_violation(G, H)


@dataclass
class PairReport:
    order: int
    subgroup_order: int
    index: int
    num_double_cosets: int
    is_hecke: bool
    R: dict
    Delta: dict
    is_normal: bool
    is_protonormal: bool
    is_subnormal: bool
    subnormal_witness: Optional[SubgroupRef] = None
    protonormal_witness: Optional[int] = None
    subnormal_violation: Optional[tuple] = None
    extra: dict = field(default_factory=dict)


def analyze_pair(G: GroupTable, H: SubgroupRef, pair: HeckePair | None = None) -> PairReport:
    pair = pair or HeckePair(G, H)
    R, Delta = hecke_data(G, H, pair)
    normal = is_normal(H)
    proto, pw = is_protonormal(G, H, pair.dc_reps)
    sub, N, triple = is_subnormal(G, H)
    return PairReport(
        order=G.order, subgroup_order=len(H), index=pair.index,
        num_double_cosets=pair.ndc, is_hecke=True, R=R, Delta=Delta,
        is_normal=normal, is_protonormal=proto, is_subnormal=sub,
        subnormal_witness=N if sub else None, protonormal_witness=pw,
        subnormal_violation=triple)


def delta_is_multiplicative(pair: HeckePair) -> Optional[tuple[int, int]]:
    """First (x, y) with Delta(xy) != Delta(x) Delta(y), or None."""
    G = pair.G
    d = [pair.delta_of(x) for x in range(G.order)]
    for x in range(G.order):
        row = G.mul[x]
        for y in range(G.order):
            if d[row[y]] != d[x] * d[y]:
                return x, y
    return None


def subnormal_consequences(G: GroupTable, H: SubgroupRef) -> Optional[int]:
    """First x where H cap H^x is not normal in H or H is not normal in H H^x."""
    for x in range(G.order):
        Hx = conjugate_subgroup(H, x)
        if not is_normal(intersection(H, Hx), H):
            return x
        HHx = SubgroupRef(G, tuple(set_product(G, H, Hx)))
        if not is_normal(H, HHx):
            return x
    return None


__all__ = ["hecke_data", "is_protonormal", "is_protonormal_full", "normal_closure",
           "is_subnormal", "subnormal_violation", "PairReport", "analyze_pair",
           "delta_is_multiplicative", "subnormal_consequences"]
