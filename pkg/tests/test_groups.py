import itertools

import pytest

from gradedexp.groups import (GroupError, GroupTable, Subgroup, all_subgroups,
                              catalog_group, conjugate_subgroup, cyclic_group,
                              dihedral_group, direct_product, double_cosets,
                              full_subgroup, intersect, left_cosets,
                              quotient_group, subgroup_closure, symmetric_group,
                              trivial_subgroup, z2_projection)

# independent oracle for the S_n cases: one-line tuples composed directly
PERMS3 = sorted(itertools.permutations(range(3)))


def compose(p, q):
    return tuple(p[q[x]] for x in range(len(p)))


def perm_index(p):
    return PERMS3.index(p)


def test_catalog_orders():
    assert cyclic_group(1).order == 1
    assert catalog_group("Z6").order == 6
    assert dihedral_group(4).order == 8
    assert symmetric_group(4).order == 24
    assert catalog_group("Z2xZ4").order == 8
    assert catalog_group("Z2xZ2xZ2").order == 8


def test_table_invariants():
    for name in ("Z5", "D3", "S3", "D4", "Z2xZ4"):
        g = catalog_group(name)
        for x in g.elements():
            assert g.mul[0][x] == x == g.mul[x][0]
            assert g.mul[x][g.inv[x]] == 0


def test_bad_tables_rejected():
    with pytest.raises(GroupError):
        GroupTable([[0, 1], [1, 1]])           # not a Latin square
    with pytest.raises(GroupError):
        GroupTable([[1, 0], [0, 1]])           # identity not at 0
    # associativity violation: a Latin square that is not a group
    # (rows: cyclic shifts arranged to break (1*1)*2 = 1*(1*2))
    square = [[0, 1, 2, 3, 4],
              [1, 0, 3, 4, 2],
              [2, 4, 0, 1, 3],
              [3, 2, 4, 0, 1],
              [4, 3, 1, 2, 0]]
    with pytest.raises(GroupError):
        GroupTable(square)


def test_subgroup_closure_examples():
    z4 = cyclic_group(4)
    assert subgroup_closure(z4, {2}).elements == (0, 2)
    assert subgroup_closure(z4, set()).elements == (0,)
    with pytest.raises(GroupError):
        subgroup_closure(z4, {7})


def test_subgroup_closure_s3_derived():
    s3 = symmetric_group(3)
    a = perm_index((1, 0, 2))
    b = perm_index((2, 1, 0))
    # oracle: brute-force closure over tuple composition
    seen = {(0, 1, 2), (1, 0, 2), (2, 1, 0)}
    changed = True
    while changed:
        changed = False
        for p in list(seen):
            for q in list(seen):
                c = compose(p, q)
                if c not in seen:
                    seen.add(c)
                    changed = True
    assert subgroup_closure(s3, {a, b}).size == len(seen) == 6


def test_left_cosets():
    z4 = cyclic_group(4)
    K = subgroup_closure(z4, {2})
    assert left_cosets(z4, K) == [(0, 2), (1, 3)]
    assert len(left_cosets(z4, full_subgroup(z4))) == 1
    s3 = symmetric_group(3)
    K13 = subgroup_closure(s3, {perm_index((2, 1, 0))})
    cosets = left_cosets(s3, K13)
    assert len(cosets) == 3 and all(len(c) == 2 for c in cosets)
    # partition check
    assert sorted(x for c in cosets for x in c) == list(range(6))


def test_double_cosets():
    z4 = cyclic_group(4)
    H = subgroup_closure(z4, {2})
    dc = double_cosets(z4, H, H)
    assert [sorted(c) for c in dc.classes] == [[0, 2], [1, 3]]
    assert dc.representatives == (0, 1)

    s3 = symmetric_group(3)
    H12 = subgroup_closure(s3, {perm_index((1, 0, 2))})
    K13 = subgroup_closure(s3, {perm_index((2, 1, 0))})
    dc2 = double_cosets(s3, H12, K13)
    assert sorted(len(c) for c in dc2.classes) == [2, 4]

    triv = trivial_subgroup(s3)
    assert len(double_cosets(s3, triv, triv).classes) == 6


def test_double_coset_partition_property():
    for name in ("Z6", "S3", "D4"):
        g = catalog_group(name)
        subs = all_subgroups(g)
        for H in subs:
            for K in subs:
                dc = double_cosets(g, H, K)
                assert sorted(x for c in dc.classes for x in c) == list(g.elements())
                assert len(dc.classes) <= g.order // K.size


def test_conjugate_subgroup():
    z4 = cyclic_group(4)
    H = subgroup_closure(z4, {2})
    assert conjugate_subgroup(z4, 1, H).elements == H.elements  # abelian
    s3 = symmetric_group(3)
    H12 = subgroup_closure(s3, {perm_index((1, 0, 2))})
    x = perm_index((1, 2, 0))
    got = conjugate_subgroup(s3, x, H12)
    # oracle: conjugate the transposition directly by tuple composition
    xinv = PERMS3[s3.inv[x]]
    h = (1, 0, 2)
    conj = compose(compose(xinv, h), PERMS3[x])
    assert set(got.elements) == {0, perm_index(conj)}
    assert got.size == H12.size
    assert conjugate_subgroup(s3, 0, H12).elements == H12.elements


def test_quotient_group():
    z4 = cyclic_group(4)
    N = subgroup_closure(z4, {2})
    q, proj = quotient_group(z4, N)
    assert q.order == 2
    assert proj[0] == proj[2] == 0 and proj[1] == proj[3] == 1

    g = catalog_group("S3")
    qe, proje = quotient_group(g, trivial_subgroup(g))
    assert qe.order == 6 and proje == list(range(6))

    a3 = subgroup_closure(g, {perm_index((1, 2, 0))})
    q2, _ = quotient_group(g, a3)
    assert q2.order == 2

    H12 = subgroup_closure(g, {perm_index((1, 0, 2))})
    with pytest.raises(GroupError):
        quotient_group(g, H12)   # not normal


def test_group_identity_all_pairs():
    """|HgK|/|K| * |g^-1 H g  cap  K| = |H| for every g and subgroup pair."""
    for name in ("Z4", "S3", "D4", "Z2xZ2"):
        g = catalog_group(name)
        subs = all_subgroups(g)
        for H in subs:
            for K in subs:
                dc = double_cosets(g, H, K)
                for x in g.elements():
                    cls = dc.classes[dc.class_of(x)]
                    inter = intersect(conjugate_subgroup(g, x, H), K)
                    assert (len(cls) // K.size) * inter.size == H.size


def test_all_subgroups_counts():
    known = {"Z4": 3, "S3": 6, "D4": 10, "Z2xZ2": 5, "Z2xZ2xZ2": 16}
    for name, count in known.items():
        assert len(all_subgroups(catalog_group(name))) == count


def test_z2_projection():
    p = catalog_group("Z2xZ4")
    parity, rest, proj = z2_projection(p)
    assert rest.order == 4
    assert parity == [0, 0, 0, 0, 1, 1, 1, 1]
    assert proj[:4] == [0, 1, 2, 3]
    with pytest.raises(GroupError):
        z2_projection(cyclic_group(4))
    with pytest.raises(GroupError):
        z2_projection(direct_product(cyclic_group(3), cyclic_group(2)))
