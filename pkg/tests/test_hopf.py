import pytest
from hypothesis import given, settings, strategies as st

from cocohopf import corpus
from cocohopf.errors import MorphismError, NormalityError, ValidationError
from cocohopf.groups import cyclic_group, rep_from_generators, symmetric_group
from cocohopf.hopf import (
    adjunction_check,
    cgkmm_split_sequence,
    corrupt_structure_constants,
    factor_through_Q,
    functor_Q,
    hopf_antipode,
    hopf_coproduct,
    hopf_counit,
    hopf_kernel,
    hopf_multiply,
    identity_morphism,
    make_cgkmm,
    make_subalgebra,
    morphism_make,
    quotient_by_normal,
    trivial_hopf,
    verify_hopf_axioms,
)
from cocohopf.lie import abelian_lie, heisenberg, lie_hom


@pytest.mark.parametrize("name", sorted(corpus.algebras()))
def test_axioms_hold(name, algebras):
    rep = verify_hopf_axioms(algebras[name], 3)
    assert rep.passed, rep.payload


def test_trivial_hopf():
    assert verify_hopf_axioms(trivial_hopf(), 2).passed


def test_corruption_detected(algebras):
    bad = corrupt_structure_constants(algebras["Uh3"], 1, 2, 1)
    rep = verify_hopf_axioms(bad, 2)
    assert not rep.passed
    assert rep.payload["checks"]["lie structure"]["status"] == "fail"


def test_sign_relations(algebras):
    A = algebras["sign"]
    x, s = A.generator("x"), A.group_element(1)
    assert s * x == -(x * s)
    assert s * s == A.one()
    assert hopf_antipode(A, x * s) == s * x * -1 or hopf_antipode(A, x * s) == -(s * x)
    assert hopf_counit(A, x) == 0 and hopf_counit(A, s) == 1


def test_coproduct_of_square(algebras):
    A = algebras["Uh3"]
    x = A.generator("x")
    d = hopf_coproduct(A, x * x)
    # x^2 (x) 1 + 2 x (x) x + 1 (x) x^2
    assert sorted(d.terms.values()) == [1, 1, 2]


keys = st.integers(min_value=0, max_value=9)


@given(keys, keys)
@settings(max_examples=40, deadline=None)
def test_multiplication_matches_operator(i, j):
    A = corpus.algebras()["swap"]
    b = A.basis(1)
    u, v = A.basis_element(b[i % len(b)]), A.basis_element(b[j % len(b)])
    assert hopf_multiply(A, u, v) == u * v


def test_tau_must_be_lie_automorphism():
    C2 = cyclic_group(2)
    h = heisenberg()
    bad = rep_from_generators(C2, 3, [1], [[[-1, 0, 0], [0, 1, 0], [0, 0, 1]]])
    with pytest.raises(ValidationError):
        make_cgkmm(C2, h, bad)


def test_morphisms_and_kernels(algebras):
    ks = corpus.kernel_morphisms()
    K = hopf_kernel(ks["KC4->KC2"])
    assert [K.ambient.group.label(g) for g in K.subgroup] == ["()", "(1 3)(2 4)"]
    K = hopf_kernel(ks["Uh3->U(h3/z)"])
    assert K.lie.dim == 1 and K.subgroup == (0,)
    assert hopf_kernel(identity_morphism(algebras["KS3"])).subgroup == (0,)
    with pytest.raises(MorphismError):
        morphism_make(algebras["Uab2"], algebras["Uh3"], [[1, 0], [0, 1], [0, 0]], (0,))


def test_quotients(algebras):
    KS3 = algebras["KS3"]
    S3 = KS3.group
    A3 = [g for g in S3.elements if S3.element_order(g) != 2]
    B, q = quotient_by_normal(KS3, make_subalgebra(KS3, A3, []))
    assert B.group.order == 2
    with pytest.raises(NormalityError) as exc:
        quotient_by_normal(KS3, make_subalgebra(KS3, [S3.generators[1]], []))
    assert exc.value.witness is not None
    Uh3 = algebras["Uh3"]
    B, q = quotient_by_normal(Uh3, make_subalgebra(Uh3, [], [(0, 0, 1)]))
    assert B.n == 2 and B.lie.is_abelian()


def test_split_sequence_and_q(algebras):
    seq = cgkmm_split_sequence(algebras["swap"])
    assert seq.kernel.n == 2 and seq.quotient.group.order == 2
    assert functor_Q(algebras["sign"]).algebra.dim == 0
    q = functor_Q(algebras["swap"])
    assert q.algebra.dim == 1
    F = lie_hom(algebras["swap"].lie, abelian_lie(1), [[1, 1]])
    assert factor_through_Q(algebras["swap"], q, F) is not None
    G = lie_hom(algebras["swap"].lie, abelian_lie(1), [[1, 0]])
    assert factor_through_Q(algebras["swap"], q, G) is None
    assert adjunction_check(algebras["sign"], symmetric_group(3)).passed
