import pytest

from cocohopf import corpus
from cocohopf.classifier import (
    build_classifier,
    certified_universal_morphism,
    classifier_piece,
    perturbations,
    universal_morphism,
    verify_rho_bar,
    verify_star_axioms,
)
from cocohopf.derivations import candidate_automorphisms
from cocohopf.hopf import morphism_witness, trivial_hopf, verify_hopf_axioms


def test_kc3_classifier(algebras):
    cls = build_classifier(algebras["KC3"])
    d = cls.describe()
    assert d["derivation_dim"] == 0 and d["automorphism_group_order"] == 2
    assert cls.materialized is not None and verify_hopf_axioms(cls.materialized, 2).passed


def test_ks3_classifier(algebras):
    cls = build_classifier(algebras["KS3"])
    assert cls.describe()["automorphism_group_order"] == 6


def test_lie_classifier_not_enumerable(algebras):
    cls = build_classifier(algebras["Ux"])
    assert cls.der_dim == 1 and not cls.aut_group.enumerable
    assert build_classifier(trivial_hopf()).describe()["automorphism_group_order"] == 1


@pytest.mark.parametrize("name", ["sign", "swap", "KS3", "Uh3"])
def test_star_and_rho_bar(name, algebras):
    cls = build_classifier(algebras[name])
    samples = candidate_automorphisms(algebras[name], 12)
    assert verify_rho_bar(cls, samples).passed
    # signed permutation matrices generate a finite piece of the classifier
    finite = [a for a in samples if all(abs(x) <= 1 for row in a.alpha for x in row)][:4]
    assert verify_star_axioms(cls, finite, 2).passed
    T, elems = classifier_piece(cls, finite)
    assert verify_hopf_axioms(T, 2).passed


@pytest.mark.parametrize("name", sorted(corpus.split_extensions()))
def test_universal_morphisms(name):
    ext = corpus.split_extensions()[name]
    u = universal_morphism(ext, 3)
    rep = u.certification
    assert rep.passed, rep.payload
    assert morphism_witness(u.morphism) is None
    assert rep.payload["rejected"] == rep.payload["competitors"]


def test_perturbations_differ(algebras):
    ext = corpus.split_extensions()["sign"]
    u = certified_universal_morphism(ext)
    comps = perturbations(u.classifier, u.chi_group, u.chi_lie, 3)
    assert len(comps) == 3
    assert all(c != (u.chi_group, u.chi_lie) for c in comps)
