import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hecke.errors import GroupValidationError
from hecke.groups import (GroupTable, SubgroupRef, all_subgroups, build_group, chain_rep_product,
                          conjugate_subgroup, coset_space, cyclic, dihedral, from_permutations,
                          generate_subgroup, intersection, is_normal, is_rep_family, rep_family,
                          set_product, subgroups_commute, symmetric, trivial, whole)

from conftest import el, small_groups


def brute_closure(perms):
    """All products of the generators, by repeated composition until stable."""
    seen = {tuple(range(len(perms[0])))}
    frontier = list(seen)
    while frontier:
        new = []
        for p in frontier:
            for g in perms:
                q = tuple(g[p[i]] for i in range(len(p)))
                if q not in seen:
                    seen.add(q)
                    new.append(q)
        frontier = new
    return seen


# --- construction -------------------------------------------------------------

def test_builtin_orders():
    assert build_group({"kind": "builtin", "family": "cyclic", "param": 1}).order == 1
    assert build_group({"kind": "builtin", "family": "dihedral", "param": 4}).order == 8


def test_perm_spec_matches_closure_oracle():
    gens = [[1, 0, 2], [1, 2, 0]]
    G = build_group({"kind": "perm", "degree": 3, "generators": gens})
    assert G.order == len(brute_closure(gens)) == 6


def test_identity_is_zero_after_reindexing():
    # Z/3 written with the identity in the last slot
    table = [[1, 2, 0], [2, 0, 1], [0, 1, 2]]
    G = GroupTable.from_table(table, labels=["a", "b", "e"])
    assert G.label(0) == "e"
    assert all(G.mul[0][x] == x == G.mul[x][0] for x in range(3))


@pytest.mark.parametrize("table", [
    [[0, 1], [0, 1]],                        # no identity
    [[0, 1, 2], [1, 0, 2], [2, 2, 0]],       # not latin
    [[0, 1], [1]],                           # ragged
])
def test_bad_tables_rejected(table):
    with pytest.raises(GroupValidationError):
        GroupTable.from_table(table)


def test_non_associative_loop_rejected():
    # a Latin square with identity 0 that is not associative (order-5 loop)
    L = [[0, 1, 2, 3, 4],
         [1, 0, 3, 4, 2],
         [2, 4, 0, 1, 3],
         [3, 2, 4, 0, 1],
         [4, 3, 1, 2, 0]]
    with pytest.raises(GroupValidationError):
        GroupTable.from_table(L)


def test_bad_builtin_params():
    with pytest.raises(GroupValidationError):
        build_group({"kind": "builtin", "family": "cyclic", "param": 0})
    with pytest.raises(GroupValidationError):
        build_group({"kind": "builtin", "family": "nope", "param": 3})
    with pytest.raises(GroupValidationError):
        build_group({"kind": "perm", "generators": [[0, 0, 1]]})


def test_closure_cap(monkeypatch):
    monkeypatch.setenv("HECKE_MAX_ORDER", "10")
    with pytest.raises(GroupValidationError):
        from_permutations([[1, 2, 3, 0], [1, 0, 2, 3]])


@pytest.mark.parametrize("G", small_groups(), ids=lambda G: G.name)
def test_group_axioms_numpy_oracle(G):
    m = np.array(G.mul)
    n = G.order
    idx = np.arange(n)
    assert (m[0] == idx).all() and (m[:, 0] == idx).all()
    assert (m[idx, np.array(G.inv)] == 0).all()
    # (xy)z against x(yz), all triples at once
    assert (m[m[:, :, None], idx[None, None, :]] == m[idx[:, None, None], m[None, :, :]]).all()


# --- subgroups ----------------------------------------------------------------

def test_generate_subgroup_examples(D4, S3):
    assert generate_subgroup(D4, []).elements == (0,)
    assert len(generate_subgroup(D4, [el(D4, "r")])) == 4
    H = generate_subgroup(S3, [el(S3, "(1 2)")])
    assert set(H.labels()) == {"()", "(1 2)"}


def test_conjugate_subgroup_examples(D4):
    H = generate_subgroup(D4, [el(D4, "s")])
    assert conjugate_subgroup(H, 0) == H
    assert set(conjugate_subgroup(H, el(D4, "r")).labels()) == {"1", "s r^2"}
    K = generate_subgroup(D4, [el(D4, "r")])
    assert all(conjugate_subgroup(K, x) == K for x in range(8))


def test_set_product_examples(D4):
    s, sr2 = el(D4, "s"), el(D4, "s r^2")
    prod = set_product(D4, [0, s], [0, sr2])
    assert {D4.label(x) for x in prod} == {"1", "s", "s r^2", "r^2"}
    H = generate_subgroup(D4, [s])
    assert set_product(D4, [0], H.elements) == H.set
    assert set_product(D4, H.elements, H.elements) == H.set


def test_commute_examples(S3):
    A = generate_subgroup(S3, [el(S3, "(1 2)")])
    B = generate_subgroup(S3, [el(S3, "(2 3)")])
    ok, wit = subgroups_commute(A, B)
    assert not ok
    a, b = wit
    assert S3.mul[a][b] not in set_product(S3, B.elements, A.elements)
    assert subgroups_commute(A, A) == (True, None)
    A3 = generate_subgroup(S3, [el(S3, "(1 2 3)")])
    assert subgroups_commute(A3, B)[0]


def test_coset_space_examples(D4):
    H = generate_subgroup(D4, [el(D4, "s")])
    dbl = coset_space(H, "double")
    assert sorted(len(b) for b in dbl.blocks) == [2, 2, 4]
    assert len(coset_space(whole(D4), "double").blocks) == 1
    assert all(len(b) == 1 for b in coset_space(trivial(D4), "right").blocks)


def test_rep_family_examples(D4):
    H = generate_subgroup(D4, [el(D4, "s")])
    assert rep_family(H, H) == [0]
    assert rep_family(H, trivial(D4)) == list(H.elements)
    K = intersection(H, conjugate_subgroup(H, el(D4, "r")))
    assert [D4.label(x) for x in rep_family(H, K)] == ["1", "s"]
    with pytest.raises(GroupValidationError):
        rep_family(K, H)


def test_chain_rep_product_examples(D4):
    H = generate_subgroup(D4, [el(D4, "s")])
    K4 = generate_subgroup(D4, [el(D4, "s"), el(D4, "r^2")])
    fam = chain_rep_product(H, K4, whole(D4))
    assert len(fam) == 4 and is_rep_family(whole(D4), H, fam)
    assert chain_rep_product(H, H, H) == [0]
    assert len(chain_rep_product(trivial(D4), H, K4)) == 4


def test_all_subgroups_s3(S3):
    subs = all_subgroups(S3)
    # brute force over subsets containing the identity
    brute = []
    for r in range(6):
        for combo in itertools.combinations(range(1, 6), r):
            try:
                brute.append(SubgroupRef(S3, (0,) + combo))
            except GroupValidationError:
                pass
    assert {s.elements for s in subs} == {s.elements for s in brute}
    assert len(subs) == 6


# --- properties ---------------------------------------------------------------

groups = st.sampled_from(small_groups())


@given(groups, st.data())
def test_double_coset_size_law(G, data):
    H = data.draw(st.sampled_from(all_subgroups(G)))
    x = data.draw(st.integers(0, G.order - 1))
    dbl = coset_space(H, "double")
    block = dbl.blocks[dbl.block_of[x]]
    R = len(rep_family(H, intersection(H, conjugate_subgroup(H, x))))
    assert len(block) == R * len(H)


@given(groups, st.data())
def test_commuting_product_size_and_bijection(G, data):
    subs = all_subgroups(G)
    A = data.draw(st.sampled_from(subs))
    B = data.draw(st.sampled_from(subs))
    ok, _ = subgroups_commute(A, B)
    if ok:
        AB = set_product(G, A.elements, B.elements)
        AnB = intersection(A, B)
        assert len(AB) * len(AnB) == len(A) * len(B)
        # |B/(A cap B)| = |AB/A|, counting cosets Ag inside AB
        cs = coset_space(A, "right")
        assert len(B) // len(AnB) == len({cs.block_of[g] for g in AB})


@given(groups, st.data())
def test_double_blocks_are_unions(G, data):
    H = data.draw(st.sampled_from(all_subgroups(G)))
    dbl = coset_space(H, "double")
    for kind in ("right", "left"):
        cs = coset_space(H, kind)
        for b in dbl.blocks:
            assert set(b) == set().union(*(cs.blocks[cs.block_of[g]] for g in b))
    assert all(min(b) == r for b, r in zip(dbl.blocks, dbl.reps))


def test_determinism():
    a = coset_space(generate_subgroup(symmetric(4), [1]), "double")
    b = coset_space(generate_subgroup(symmetric(4), [1]), "double")
    assert a.reps == b.reps and a.blocks == b.blocks


def test_normality_examples(D4):
    assert is_normal(generate_subgroup(D4, [el(D4, "r")]))
    assert not is_normal(generate_subgroup(D4, [el(D4, "s")]))
    assert is_normal(generate_subgroup(cyclic(6), [2]))


def test_dihedral_relation(D4):
    r, s = el(D4, "r"), el(D4, "s")
    assert D4.m(s, r, s) == D4.inv[r]
    assert dihedral(1).order == 2
