"""Named algebras, normal pairs, morphisms and split extensions used by the tests and the CLI."""
from __future__ import annotations

from functools import lru_cache

from .action import action_make, smash_product, trivial_action
from .derivations import make_derivation
from .groups import cyclic_group, group_homomorphisms, rep_from_generators, symmetric_group, trivial_group
from .hopf import (
    CgkmmHopf,
    HopfMorphism,
    HopfSubalgebra,
    SplitExtension,
    cgkmm_split_sequence,
    enveloping_algebra,
    group_algebra,
    make_cgkmm,
    make_subalgebra,
    morphism_make,
    whole,
)
from .lie import abelian_lie, heisenberg


@lru_cache(maxsize=None)
def algebras() -> dict[str, CgkmmHopf]:
    C2, C3, C4, S3 = cyclic_group(2), cyclic_group(3), cyclic_group(4), symmetric_group(3)
    out = {
        "KS3": group_algebra(S3, "KS3"),
        "KC4": group_algebra(C4, "KC4"),
        "KC3": group_algebra(C3, "KC3"),
        "KC2": group_algebra(C2, "KC2"),
        "Uh3": enveloping_algebra(heisenberg(), "Uh3"),
        "Uab2": enveloping_algebra(abelian_lie(["a", "b"]), "Uab2"),
        "Ux": enveloping_algebra(abelian_lie(["x"]), "Ux"),
        "sign": make_cgkmm(C2, abelian_lie(["x"]), rep_from_generators(C2, 1, [1], [[[-1]]]), "sign"),
        "swap": make_cgkmm(
            C2, abelian_lie(["e1", "e2"]), rep_from_generators(C2, 2, [1], [[[0, 1], [1, 0]]]), "swap"
        ),
        "h3c2": make_cgkmm(
            C2, heisenberg(), rep_from_generators(C2, 3, [1], [[[-1, 0, 0], [0, -1, 0], [0, 0, 1]]]), "h3c2"
        ),
    }
    out["KC3xKC2"] = inversion_extension()[0]
    out["UmxUl"] = derivation_extension()[0]
    return out


def get(name: str) -> CgkmmHopf:
    return algebras()[name]


@lru_cache(maxsize=None)
def inversion_extension() -> tuple[CgkmmHopf, SplitExtension]:
    """``K[C3] x| K[C2]`` for the inversion action, a copy of ``K[S3]``."""
    KC2, KC3 = group_algebra(cyclic_group(2), "KC2"), group_algebra(cyclic_group(3), "KC3")
    inv = tuple(KC3.group.inv(g) for g in KC3.group.elements)
    rho = action_make(KC2, KC3, {1: ((), inv)}, [])
    return smash_product(rho, "KC3xKC2")


@lru_cache(maxsize=None)
def derivation_extension() -> tuple[CgkmmHopf, SplitExtension]:
    """``U(Qm) x| U(Ql)`` with ``l`` acting on ``m`` by the identity derivation."""
    Um = enveloping_algebra(abelian_lie(["m"]), "Um")
    Ul = enveloping_algebra(abelian_lie(["l"]), "Ul")
    rho = action_make(Ul, Um, {}, [make_derivation(Um, [[1]])])
    return smash_product(rho, "UmxUl")


@lru_cache(maxsize=None)
def trivial_extension() -> tuple[CgkmmHopf, SplitExtension]:
    KC2, Ux = group_algebra(cyclic_group(2), "KC2"), enveloping_algebra(abelian_lie(["x"]), "Ux")
    return smash_product(trivial_action(KC2, Ux), "UxKC2")


def split_extensions() -> dict[str, SplitExtension]:
    A = algebras()
    return {
        "sign": cgkmm_split_sequence(A["sign"]),
        "swap": cgkmm_split_sequence(A["swap"]),
        "h3c2": cgkmm_split_sequence(A["h3c2"]),
        "KC3xKC2": inversion_extension()[1],
        "UmxUl": derivation_extension()[1],
        "trivial": trivial_extension()[1],
    }


def normal_pairs() -> dict[str, tuple[CgkmmHopf, HopfSubalgebra]]:
    """Normal Hopf subalgebras ``H`` of corpus algebras ``A``."""
    A = algebras()
    KS3, Uh3, KC4 = A["KS3"], A["Uh3"], A["KC4"]
    S3 = KS3.group
    A3 = [g for g in S3.elements if S3.element_order(g) != 2]
    return {
        "KS3/KA3": (KS3, make_subalgebra(KS3, A3, [])),
        "KS3/KS3": (KS3, whole(KS3)),
        "Uh3/Uh3": (Uh3, whole(Uh3)),
        "Uh3/Uz": (Uh3, make_subalgebra(Uh3, [], [(0, 0, 1)])),
        "KC4/KC2": (KC4, make_subalgebra(KC4, [KC4.group.power(1, 2)], [])),
        "sign/Ux": (A["sign"], make_subalgebra(A["sign"], [], [(1,)])),
        "swap/swap": (A["swap"], whole(A["swap"])),
        "swap/diag": (A["swap"], make_subalgebra(A["swap"], [], [(1, 1)])),
        "h3c2/Uh3": (A["h3c2"], make_subalgebra(A["h3c2"], [], [(1, 0, 0), (0, 1, 0), (0, 0, 1)])),
        "UmxUl/Um": (A["UmxUl"], make_subalgebra(A["UmxUl"], [], [(1, 0)])),
    }


def kernel_morphisms() -> dict[str, HopfMorphism]:
    A = algebras()
    KC4, KC2 = A["KC4"], A["KC2"]
    onto = next(b for b in group_homomorphisms(KC4.group, KC2.group) if len(set(b)) == 2)
    Uxy = enveloping_algebra(abelian_lie(["x", "y"]), "U(h3/z)")
    return {
        "KC4->KC2": morphism_make(KC4, KC2, (), onto),
        "Uh3->U(h3/z)": morphism_make(A["Uh3"], Uxy, [[1, 0, 0], [0, 1, 0]], (0,)),
    }


def trivial_group_algebra() -> CgkmmHopf:
    return group_algebra(trivial_group(), "K")
