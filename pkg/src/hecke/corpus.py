"""The builtin test corpus: every subgroup of every small builtin group."""

from __future__ import annotations

from typing import Iterator

from .errors import GroupValidationError
from .groups import GroupTable, SubgroupRef, all_subgroups, build_group, builtin_order, max_order

# family -> parameters worth trying; orders are filtered separately.  The
# trivial group is listed once, as cyclic(1).
FAMILY_RANGE = {
    "cyclic": range(1, 49),
    "dihedral": range(1, 25),
    "symmetric": range(2, 5),
    "quaternion": (8,),
    "affine_mod": range(2, 13),
}


def corpus_groups(max_ord: int = 24) -> list[tuple[str, int, GroupTable]]:
    """(family, param, group) for each builtin group of order <= max_ord."""
    if max_ord > max_order():
        raise GroupValidationError(f"max order {max_ord} exceeds the cap {max_order()}")
    out = []
    for fam, params in FAMILY_RANGE.items():
        for n in params:
            if builtin_order(fam, n) <= max_ord:
                G = build_group({"kind": "builtin", "family": fam, "param": n})
                out.append((fam, n, G))
    return out


def corpus_pairs(max_ord: int = 24) -> Iterator[tuple[str, int, GroupTable, SubgroupRef]]:
    for fam, n, G in corpus_groups(max_ord):
        for H in all_subgroups(G):
            yield fam, n, G, H
