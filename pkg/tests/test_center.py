import pytest

from cocohopf import corpus
from cocohopf.action import verify_action_axioms
from cocohopf.center import (
    center,
    centralizer,
    commutant_space,
    conjugation_action,
    hz_compare,
    is_normal,
)
from cocohopf.errors import NormalityError
from cocohopf.hopf import make_subalgebra, whole


def _names(H):
    return [H.ambient.group.label(g) for g in H.subgroup]


def test_s3_a3(algebras):
    A, H = corpus.normal_pairs()["KS3/KA3"]
    res = centralizer(A, H)
    assert _names(res.subalgebra) == ["()", "(1 2 3)", "(1 3 2)"]
    # the plain commutant also contains the class sum of the transpositions
    assert commutant_space(A, H.generators(), 0).rank == 4


def test_heisenberg_center(algebras):
    res = center(algebras["Uh3"])
    assert res.subalgebra.lie.basis == ((0, 0, 1),) and res.ker_grp == (0,)


@pytest.mark.parametrize("name", sorted(corpus.normal_pairs()))
def test_pairs(name):
    A, H = corpus.normal_pairs()[name]
    ok, rep = is_normal(A, H)
    assert ok, rep.payload
    res = centralizer(A, H, 3)
    assert res.certification.passed
    assert is_normal(A, res.subalgebra)[0]
    assert verify_action_axioms(conjugation_action(A, H), 3).passed


def test_non_normal(algebras):
    A = algebras["KS3"]
    T = make_subalgebra(A, [A.group.generators[1]], [])
    ok, rep = is_normal(A, T)
    assert not ok and rep.payload["first_failure"]["check"] == "generator conditions"
    with pytest.raises(NormalityError):
        centralizer(A, T)
    with pytest.raises(NormalityError):
        conjugation_action(A, T)


@pytest.mark.parametrize("name", sorted(corpus.algebras()))
def test_hz(name, algebras):
    rep = hz_compare(algebras[name], 3)
    assert rep.passed, rep.payload


def test_hz_dimensions(algebras):
    g = hz_compare(algebras["Uh3"]).payload["graded_dimensions"]
    assert g["hz"] == g["center"] == [1, 1, 1, 1]
    g = hz_compare(algebras["Uab2"]).payload["graded_dimensions"]
    assert g["algebraic_center"] == g["hz"] == [1, 2, 3, 4]
    g = hz_compare(algebras["KS3"]).payload["graded_dimensions"]
    assert g["algebraic_center"] == [3, 0, 0, 0] and g["hz"] == [1, 0, 0, 0]


def test_center_whole_vs_trivial(algebras):
    A = algebras["KC4"]
    assert center(A).subalgebra.subgroup == tuple(A.group.elements)
    assert center(algebras["KS3"]).subalgebra.subgroup == (0,)
    assert whole(A).subgroup == tuple(A.group.elements)
