import pytest

from cocohopf import groups
from cocohopf.errors import GroupError, ValidationError


def test_orders_and_labels():
    S3 = groups.symmetric_group(3)
    assert S3.order == 6 and not S3.is_abelian()
    assert groups.cyclic_group(4).is_abelian()
    assert S3.label(0) == "()"
    assert sorted(S3.element_order(g) for g in S3.elements) == [1, 2, 2, 2, 3, 3]


def test_cycles_round_trip():
    p = groups.perm_from_cycles(5, [(1, 3, 2), (4, 5)])
    assert groups.format_perm(p) == "(1 3 2)(4 5)"
    with pytest.raises(GroupError):
        groups.perm_from_cycles(3, [(1, 4)])
    with pytest.raises(GroupError):
        groups.perm_from_cycles(3, [(1, 2), (2, 3)])


def test_automorphism_counts():
    assert len(groups.enumerate_automorphisms(groups.symmetric_group(3))) == 6
    assert len(groups.enumerate_automorphisms(groups.cyclic_group(4))) == 2
    assert len(groups.enumerate_automorphisms(groups.cyclic_group(5))) == 4
    assert len(groups.enumerate_automorphisms(groups.trivial_group())) == 1


def test_centralizer_center_quotient():
    S3 = groups.symmetric_group(3)
    assert groups.group_center(S3).order == 1
    r = S3.find_perm(groups.perm_from_cycles(3, [(1, 2, 3)]))
    assert groups.group_centralizer(S3, [r]).order == 3
    A3 = groups.generated_subgroup(S3, [r])
    ok, _ = groups.is_normal_subgroup(S3, A3)
    assert ok
    assert groups.quotient_group(S3, A3).table.order == 2
    s = S3.find_perm(groups.perm_from_cycles(3, [(1, 2)]))
    ok, wit = groups.is_normal_subgroup(S3, groups.generated_subgroup(S3, [s]))
    assert not ok and wit is not None


def test_semidirect_inversion_is_s3():
    C3, C2 = groups.cyclic_group(3), groups.cyclic_group(2)
    inv = tuple(C3.inv(g) for g in C3.elements)
    G = groups.semidirect_group(C3, C2, [tuple(C3.elements), inv])
    assert G.order == 6 and not G.is_abelian()
    assert groups.find_isomorphism(G, groups.symmetric_group(3)) is not None
    D = groups.direct_product(C3, C2)
    assert groups.find_isomorphism(D, groups.cyclic_group(6)) is not None


def test_homomorphism_extension():
    C4, C2 = groups.cyclic_group(4), groups.cyclic_group(2)
    f = groups.extend_homomorphism(C4, C2, [1], [1])
    assert f is not None and groups.is_homomorphism(C4, C2, f) is None
    C3 = groups.cyclic_group(3)
    assert groups.extend_homomorphism(C3, C2, [1], [1]) is None


def test_reps_and_cocycles():
    C2 = groups.cyclic_group(2)
    sign = groups.rep_from_generators(C2, 1, [1], [[[-1]]])
    Z = groups.cocycle_space(C2, sign)
    assert len(Z) == 1
    assert groups.is_cocycle(C2, sign, Z[0])
    triv = groups.trivial_rep(C2, 1)
    # Hom(C2, Q) = 0
    assert groups.cocycle_space(C2, triv) == []
    with pytest.raises(ValidationError):
        groups.rep_from_generators(C2, 1, [1], [[[2]]])
