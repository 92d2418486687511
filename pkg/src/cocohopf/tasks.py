"""One report-producing function per task, on library objects.

The command-line front end only resolves workspace names and calls these,
so its JSON output is the serialisation of a direct library call.
"""
from __future__ import annotations

from .action import HopfAction, smash_product, verify_action_axioms, verify_split_extension
from .center import center, centralizer, hz_compare, is_normal
from .classifier import build_classifier, universal_morphism, verify_star_axioms
from .derivations import certify_derivation, hopf_derivations
from .hopf import (
    CgkmmHopf,
    HopfSubalgebra,
    SplitExtension,
    cgkmm_split_sequence,
    functor_Q,
    hopf_kernel,
    quotient_by_normal,
    verify_hopf_axioms,
)
from .report import FAIL, PASS, Report


def _combine(task: str, parts: dict[str, Report], **extra) -> Report:
    ok = all(r.passed for r in parts.values())
    payload = {k: r.payload for k, r in parts.items()}
    payload.update(extra)
    return Report(task, PASS if ok else FAIL, payload)


def check_hopf_report(H: CgkmmHopf, degree: int = 3) -> Report:
    return verify_hopf_axioms(H, degree)


def check_action_report(rho: HopfAction, degree: int = 3) -> Report:
    return verify_action_axioms(rho, degree)


def smash_report(rho: HopfAction, degree: int = 3) -> Report:
    E, ext = smash_product(rho)
    return _combine(
        "smash",
        {"hopf_axioms": verify_hopf_axioms(E, degree), "split_extension": verify_split_extension(ext, degree)},
        algebra=E.describe(),
    )


def split_sequence_report(ext: SplitExtension, degree: int = 3) -> Report:
    rep = verify_split_extension(ext, degree)
    rep.payload.update(
        kernel=ext.kernel.describe(), total=ext.total.describe(), quotient=ext.quotient.describe(),
        action=ext.action.describe(),
    )
    return rep


def derivations_report(H: CgkmmHopf, degree: int = 3) -> Report:
    basis = hopf_derivations(H, degree, certify=False)
    certs = [certify_derivation(psi, degree) for psi in basis]
    return Report(
        "derivations",
        PASS if all(c.passed for c in certs) else FAIL,
        {
            "algebra": H.name,
            "dimension": len(basis),
            "basis": [psi.describe() for psi in basis],
            "certification": [c.payload for c in certs],
        },
    )


def automorphisms_report(H: CgkmmHopf, degree: int = 3) -> Report:
    aut = build_classifier(H, degree).aut_group
    payload = {"algebra": H.name, "enumerable": aut.enumerable}
    if aut.enumerable:
        payload["order"] = len(aut.elements)
        payload["elements"] = [phi.describe() for phi in aut.elements]
    else:
        payload["note"] = "Aut_Hopf is infinite or too large to list; membership, composition and inversion are exact"
    return Report("automorphisms", PASS, payload)


def classifier_report(H: CgkmmHopf, degree: int = 3) -> Report:
    cls = build_classifier(H, degree)
    star = verify_star_axioms(cls, degree=min(degree, 2))
    return Report("classifier", star.status, {"algebra": H.name, **cls.describe(), "star_action": star.payload})


def universal_report(ext: SplitExtension, degree: int = 3) -> Report:
    u = universal_morphism(ext, degree)
    rep = u.certification
    rep.payload["morphism"] = u.describe()
    return rep


def kernel_report(A: CgkmmHopf, H: HopfSubalgebra | None = None, degree: int = 3) -> Report:
    """Kernel of ``A -> A/H``, or of ``A -> K[G]`` when no ``H`` is given."""
    f = quotient_by_normal(A, H, degree)[1] if H is not None else cgkmm_split_sequence(A).f
    K = hopf_kernel(f, degree)
    return Report("kernel", PASS, {"algebra": A.name, "target": f.target.describe(), "kernel": K.describe()})


def quotient_report(A: CgkmmHopf, H: HopfSubalgebra, degree: int = 3) -> Report:
    B, _ = quotient_by_normal(A, H, degree)
    return Report("quotient", PASS, {"algebra": A.name, "quotient": B.describe()})


def centralizer_report(A: CgkmmHopf, H: HopfSubalgebra, degree: int = 3) -> Report:
    res = centralizer(A, H, degree)
    normal, _ = is_normal(A, res.subalgebra, degree)
    rep = res.certification
    rep.payload.update(centralizer=res.describe(), centralizer_normal=normal)
    if not normal:
        rep.status = FAIL
    return rep


def center_report(A: CgkmmHopf, degree: int = 3) -> Report:
    res = center(A, degree)
    rep = res.certification
    rep.task = "center"
    trivial = res.subalgebra.lie.dim == 0 and len(res.ker_grp) == 1
    rep.payload.update(algebra=A.name, center=res.describe(), trivial=trivial)
    return rep


def hz_compare_report(A: CgkmmHopf, degree: int = 3) -> Report:
    return hz_compare(A, degree)


def functor_q_report(H: CgkmmHopf, degree: int = 3) -> Report:
    q = functor_Q(H)
    return Report(
        "functor-q",
        PASS,
        {
            "algebra": H.name,
            "dimension": q.algebra.dim,
            "basis": list(q.algebra.names),
            "ideal": [H.lie.format_vector(v) for v in q.ideal.basis],
        },
    )
