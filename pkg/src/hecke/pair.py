"""Shared context for a pair (G, H): coset bookkeeping, R and Delta.

Everything the module-space and Hecke-algebra layers need about a pair is
computed once here.  Right cosets ``Ht`` index the coset module, double
cosets ``HxH`` index the Hecke algebra.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property

from .groups import (GroupTable, SubgroupRef, conjugate_subgroup, coset_space,
                     intersection, rep_family)


class HeckePair:
    def __init__(self, G: GroupTable, H: SubgroupRef):
        if H.parent is not G:
            raise ValueError("H is not a subgroup of G")
        self.G = G
        self.H = H
        right = coset_space(H, "right")
        double = coset_space(H, "double")
        self.right = right
        self.double = double
        self.rc_reps = right.reps            # right-coset representatives t
        self.rc_of = right.block_of          # element -> right-coset index
        self.dc_reps = double.reps           # double-coset representatives x
        self.dc_of = double.block_of         # element -> double-coset index
        self.index = len(right.reps)         # [G:H]
        self.ndc = len(double.reps)
        self.dc_inv = tuple(self.dc_of[G.inv[x]] for x in self.dc_reps)
        # right cosets of each double coset, as right-coset indices
        rc_in = [[] for _ in range(self.ndc)]
        for i, t in enumerate(self.rc_reps):
            rc_in[self.dc_of[t]].append(i)
        self.rc_in_dc = tuple(tuple(r) for r in rc_in)
        self.R = tuple(len(rep_family(H, intersection(H, conjugate_subgroup(H, x))))
                       for x in self.dc_reps)
        self.Delta = tuple(Fraction(self.R[i], self.R[self.dc_inv[i]]) for i in range(self.ndc))
        self.identity_dc = self.dc_of[0]     # always 0

    def __repr__(self) -> str:
        return f"HeckePair({self.G.name or self.G.order}, |H|={len(self.H)})"

    def R_of(self, x: int) -> int:
        return self.R[self.dc_of[x]]

    def delta_of(self, x: int) -> Fraction:
        return self.Delta[self.dc_of[x]]

    def dc_rep(self, x: int) -> int:
        return self.dc_reps[self.dc_of[x]]

    @cached_property
    def conv_table(self) -> tuple:
        """For each double coset z (rep t) and each right coset Hs, record
        (dc of t s^{-1}, dc of s).  Stored as ``table[z][b] = ((a, count), ...)``
        with b the double coset of s; convolution then only walks nonzero
        entries."""
        G = self.G
        mul, inv = G.mul, G.inv
        dc_of = self.dc_of
        out = []
        for t in self.dc_reps:
            row: dict[int, dict[int, int]] = {}
            mt = mul[t]
            for s in self.rc_reps:
                a = dc_of[mt[inv[s]]]
                b = dc_of[s]
                d = row.setdefault(b, {})
                d[a] = d.get(a, 0) + 1
            out.append({b: tuple(sorted(d.items())) for b, d in row.items()})
        return tuple(out)

    @cached_property
    def struct(self) -> dict:
        """Transpose of ``conv_table``: ``struct[a, b] = ((z, count), ...)`` so a
        product of indicator functions 1_a * 1_b is read off directly."""
        out: dict[tuple[int, int], list] = {}
        for z, row in enumerate(self.conv_table):
            for b, entries in row.items():
                for a, cnt in entries:
                    out.setdefault((a, b), []).append((z, cnt))
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def inverse_rc(self) -> tuple:
        """Right-coset index of ``t s^{-1}`` for right-coset reps t, s (row t, column s)."""
        G = self.G
        return tuple(tuple(self.rc_of[G.mul[t][G.inv[s]]] for s in self.rc_reps)
                     for t in self.rc_reps)
