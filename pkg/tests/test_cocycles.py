import pytest

from gradedexp.cocycles import (CocycleError, TwoCocycle, coboundary_cocycle,
                                cocycle_violation, conjugate_cocycle,
                                klein_cocycle, restrict_cocycle,
                                trivial_cocycle, twisted_product,
                                verify_cocycle)
from gradedexp.groups import (catalog_group, full_subgroup, subgroup_closure,
                              trivial_subgroup)
from gradedexp.rng import Xorshift


def test_trivial_passes():
    H = full_subgroup(catalog_group("Z4"))
    f = trivial_cocycle(H, 2)
    assert cocycle_violation(H, 2, f.table) is None
    verify_cocycle(f)


def test_coboundaries_are_cocycles():
    rng = Xorshift(3)
    for name in ("Z4", "S3", "D4"):
        g = catalog_group(name)
        for gens in ([1], [2], [1, 2]):
            H = subgroup_closure(g, set(x % g.order for x in gens))
            for n in (2, 3, 4):
                lam = [0] + [rng.below(n) for _ in range(H.size - 1)]
                f = coboundary_cocycle(H, n, lam)
                assert cocycle_violation(H, n, f.table) is None


def test_coboundary_requires_normalized_lambda():
    H = full_subgroup(catalog_group("Z2"))
    with pytest.raises(CocycleError):
        coboundary_cocycle(H, 2, [1, 0])


def test_corrupted_table_reports_witness():
    H = full_subgroup(catalog_group("Z2xZ2"))
    f = klein_cocycle(H)
    t = [list(r) for r in f.table]
    t[1][2] ^= 1
    bad = cocycle_violation(H, 2, t)
    assert bad is not None and len(bad) in (2, 3)
    with pytest.raises(CocycleError):
        TwoCocycle(H, 2, tuple(tuple(r) for r in t))


def test_dimension_mismatch():
    H = full_subgroup(catalog_group("Z2"))
    with pytest.raises(CocycleError):
        cocycle_violation(H, 2, ((0,),))


def test_twisted_product():
    z4 = catalog_group("Z4")
    H = full_subgroup(z4)
    f = coboundary_cocycle(H, 4, [0, 1, 3, 2])
    # normalization: identity factors contribute exponent 0
    for h in H.elements:
        assert twisted_product(f, 0, h) == (0, h)
        assert twisted_product(f, h, 0) == (0, h)
    # u_h is invertible: product with the inverse lands on the identity
    for h in H.elements:
        exp, prod = twisted_product(f, h, z4.inv[h])
        assert prod == 0
    # table read-back
    assert twisted_product(f, 1, 2)[0] == f.value(1, 2)
    with pytest.raises(CocycleError):
        twisted_product(trivial_cocycle(trivial_subgroup(z4)), 1, 1)


def test_klein_nontrivial():
    k4 = catalog_group("Z2xZ2")
    H = full_subgroup(k4)
    f = klein_cocycle(H)
    # the twisted algebra is noncommutative, so f is not a coboundary
    assert f.value(1, 2) != f.value(2, 1)
    verify_cocycle(f)
    # also at modulus 4 (values land on the sign subgroup)
    f4 = klein_cocycle(H, 4)
    verify_cocycle(f4)
    with pytest.raises(CocycleError):
        klein_cocycle(H, 3)
    with pytest.raises(CocycleError):
        klein_cocycle(subgroup_closure(k4, {1}))


def test_conjugation_transport():
    s3 = catalog_group("S3")
    H = subgroup_closure(s3, {3})
    rng = Xorshift(9)
    lam = [0] + [rng.below(4) for _ in range(H.size - 1)]
    f = coboundary_cocycle(H, 4, lam)
    for x in s3.elements():
        g = conjugate_cocycle(f, x)
        verify_cocycle(g)
        # transported values agree: g(x^-1 h x, x^-1 h' x) = f(h, h')
        for h in H.elements:
            for hp in H.elements:
                assert g.value(s3.conj(x, h), s3.conj(x, hp)) == f.value(h, hp)
        back = conjugate_cocycle(g, s3.inv[x])
        assert back.H.elements == H.elements and back.table == f.table


def test_conjugation_identity_and_abelian():
    z4 = catalog_group("Z4")
    H = subgroup_closure(z4, {2})
    f = trivial_cocycle(H)
    assert conjugate_cocycle(f, 0).table == f.table
    assert conjugate_cocycle(f, 1).H.elements == H.elements


def test_restriction():
    k4 = catalog_group("Z2xZ2")
    H = full_subgroup(k4)
    f = klein_cocycle(H)
    for gen in (1, 2, 3):
        sub = subgroup_closure(k4, {gen})
        r = restrict_cocycle(f, sub)
        verify_cocycle(r)
        assert r.H.elements == sub.elements
    triv = restrict_cocycle(f, trivial_subgroup(k4))
    assert triv.table == ((0,),)
    assert restrict_cocycle(f, H).table == f.table
    z4 = catalog_group("Z4")
    with pytest.raises(CocycleError):
        restrict_cocycle(f, subgroup_closure(z4, {2}))
