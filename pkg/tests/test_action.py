import pytest

from cocohopf import corpus, linalg, pbw
from cocohopf.action import (
    action_make,
    canonical_isomorphism,
    extract_action,
    raw_action,
    recombine_morphisms,
    replace_section,
    smash_product,
    trivial_action,
    verify_action_axioms,
    verify_split_extension,
)
from cocohopf.derivations import make_derivation
from cocohopf.errors import ActionError, CompatibilityError
from cocohopf.groups import cyclic_group, find_isomorphism, symmetric_group
from cocohopf.hopf import (
    cgkmm_split_sequence,
    enveloping_algebra,
    group_algebra,
    identity_morphism,
    morphism_make,
    verify_hopf_axioms,
    zero_morphism,
)
from cocohopf.lie import abelian_lie, lie_from_structure_constants


@pytest.mark.parametrize("name", sorted(corpus.split_extensions()))
def test_corpus_extensions(name):
    ext = corpus.split_extensions()[name]
    assert verify_split_extension(ext, 3).passed
    assert verify_action_axioms(ext.action, 3).passed
    E, ext2 = smash_product(ext.action)
    assert verify_hopf_axioms(E, 3).passed
    assert verify_split_extension(ext2, 3).passed
    assert extract_action(ext2) == ext.action


def test_inversion_smash_is_s3():
    E, ext = corpus.inversion_extension()
    KS3 = group_algebra(symmetric_group(3), "KS3")
    iso = find_isomorphism(E.group, KS3.group)
    assert iso is not None
    f = morphism_make(E, KS3, (), iso)
    assert len(set(f.beta)) == 6


def test_derivation_smash_is_nonabelian_two_dim():
    E, ext = corpus.derivation_extension()
    aff = enveloping_algebra(lie_from_structure_constants(["x", "y"], {("x", "y"): {"y": 1}}), "aff")
    # x -> -l, y -> m
    f = morphism_make(aff, E, [[0, 1], [-1, 0]], (0,))
    assert linalg.inverse(f.alpha) is not None
    m, l = E.generator("m"), E.generator("l")
    assert l * m - m * l == m
    assert l * m * m - m * m * l == 2 * (m * m)


def test_sign_smash_recovers_sign(algebras):
    KC2, Ux = group_algebra(cyclic_group(2), "KC2"), enveloping_algebra(abelian_lie(["x"]), "Ux")
    rho = action_make(KC2, Ux, {1: ([[-1]], (0,))}, [])
    E, ext = smash_product(rho)
    assert E == algebras["sign"]
    assert cgkmm_split_sequence(algebras["sign"]).action == rho


def test_invalid_group_part():
    KC2, KC5 = group_algebra(cyclic_group(2)), group_algebra(cyclic_group(5))
    order4 = tuple((2 * g) % 5 for g in range(5))
    with pytest.raises(ActionError):
        action_make(KC2, KC5, {1: ((), order4)}, [])


def test_non_section_detected():
    ext = cgkmm_split_sequence(corpus.get("sign"))
    bad = replace_section(ext, zero_morphism(ext.quotient, ext.total))
    rep = verify_split_extension(bad)
    assert rep.payload["first_failure"]["check"] == "f o s = id"


def test_raw_action_fails_axioms():
    KC2, Ux = group_algebra(cyclic_group(2)), enveloping_algebra(abelian_lie(["x"]))

    def act(bkey, akey):
        return {akey: 2} if bkey[1] else {akey: 1}

    rep = verify_action_axioms(raw_action(KC2, Ux, act), 2)
    assert not rep.passed


def test_recombination():
    KC2, Ux = group_algebra(cyclic_group(2), "KC2"), enveloping_algebra(abelian_lie(["x"]), "Ux")
    sign = action_make(KC2, Ux, {1: ([[-1]], (0,))}, [])
    triv = trivial_action(KC2, Ux)
    with pytest.raises(CompatibilityError):
        recombine_morphisms(identity_morphism(Ux), identity_morphism(KC2), sign, triv)
    h = recombine_morphisms(identity_morphism(Ux), identity_morphism(KC2), sign, sign)
    assert len(set(h.beta)) == 2


def test_lie_action_derivation():
    Um, Ul = enveloping_algebra(abelian_lie(["m"])), enveloping_algebra(abelian_lie(["l"]))
    rho = action_make(Ul, Um, {}, [make_derivation(Um, [[1]])])
    m2 = (pbw.letter_mono(1, 0), 0)
    l = (pbw.letter_mono(1, 0), 0)
    sq = ((2,), 0)
    assert rho.act_key(l, sq) == {sq: 2}
    assert rho.act_key(l, m2) == {m2: 1}


def test_canonical_isomorphism_bijective():
    ext = corpus.split_extensions()["h3c2"]
    iso = canonical_isomorphism(ext)
    assert len(set(iso.beta)) == ext.total.group.order
