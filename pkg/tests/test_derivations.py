import pytest

from cocohopf import corpus
from cocohopf.derivations import (
    aut_compose,
    aut_invert,
    aut_membership,
    certify_derivation,
    conjugate_derivation,
    derivation_bracket,
    hopf_derivations,
    identity_automorphism,
    in_span,
    make_automorphism,
    make_derivation,
)
from cocohopf.errors import ValidationError

DIMS = {"KS3": 0, "KC4": 0, "KC3": 0, "Uh3": 6, "Uab2": 4, "Ux": 1, "sign": 2, "swap": 3}


@pytest.mark.parametrize("name,dim", sorted(DIMS.items()))
def test_dimensions(name, dim, algebras):
    basis = hopf_derivations(algebras[name], 3)
    assert len(basis) == dim
    for psi in basis:
        assert certify_derivation(psi, 3).passed


@pytest.mark.parametrize("name", ["Uh3", "sign", "swap", "h3c2"])
def test_bracket_closure(name, algebras):
    basis = hopf_derivations(algebras[name], 2)
    for a in basis:
        for b in basis:
            assert in_span(basis, derivation_bracket(a, b)) is not None


def test_sign_bracket(algebras):
    A = algebras["sign"]
    p1 = make_derivation(A, [[1]])
    p2 = make_derivation(A, [[0]], {1: (1,)})
    br = derivation_bracket(p1, p2)
    assert br.delta == ((0,),) and br.d[1] == (1,)


def test_invalid_derivation(algebras):
    with pytest.raises(ValidationError):
        make_derivation(algebras["Uh3"], [[1, 0, 0], [0, 0, 0], [0, 0, 0]])


def test_automorphisms(algebras):
    A = algebras["sign"]
    phi = make_automorphism(A, [[-1]])
    psi = make_derivation(A, [[0]], {1: (1,)})
    conj = conjugate_derivation(phi, psi)
    assert conj.d[1] == (-1,)
    assert aut_compose(phi, aut_invert(phi)) == identity_automorphism(A)
    assert not aut_membership(algebras["swap"], [[1, 0], [0, 2]], (0, 1))
    with pytest.raises(ValidationError):
        make_automorphism(algebras["Uh3"], [[1, 0, 0], [0, 1, 0], [0, 0, 2]])
