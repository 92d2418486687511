"""The split extension classifier ``[H] = U(Der_Hopf(H)) x| K[Aut_Hopf(H)]``.

``Der_Hopf(H)`` is given by a reduced echelon basis ``psi_1 .. psi_k``.  As a
Lie algebra inside ``U(...)`` it carries the bracket read off the algebra
commutator, ``[psi_i, psi_j] = psi_j o psi_i - psi_i o psi_j``, so that a
PBW word acts on ``H`` by composing its letters.

``Aut_Hopf(H)`` is only a membership/compose/invert descriptor unless ``L``
is zero, in which case it is ``Aut(G)`` and ``[H]`` is materialised.  For a
finite set of automorphisms the finite subgroup they generate gives a
materialised piece ``U(Der_Hopf(H)) x| K[Gamma]`` of ``[H]``; universal
morphisms land in such a piece.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from . import linalg, pbw
from .action import HopfAction, action_witness, verify_module_axioms
from .derivations import (
    HopfAutomorphism,
    HopfDerivation,
    aut_compose,
    aut_invert,
    aut_membership,
    candidate_automorphisms,
    conjugate_derivation,
    derivation_bracket,
    hopf_derivations,
    identity_automorphism,
    in_span,
    zero_derivation,
)
from .errors import AutomorphismEnumerationInfeasible, CertificationError
from .groups import GroupTable, LinearRep, enumerate_automorphisms, group_from_table
from .hopf import CgkmmHopf, HopfMorphism, SplitExtension, make_cgkmm, morphism_make, morphism_witness
from .lie import LieAlgebra
from .linalg import ONE, ZERO
from .report import CheckLog, Report

GAMMA_BOUND = 512


@dataclass(frozen=True)
class AutGroup:
    """``Aut_Hopf(H)`` as a computable group."""

    hopf: CgkmmHopf
    elements: tuple[HopfAutomorphism, ...] | None

    @property
    def enumerable(self) -> bool:
        return self.elements is not None

    def contains(self, phi: HopfAutomorphism) -> bool:
        return phi.hopf == self.hopf and aut_membership(self.hopf, phi.alpha, phi.beta)

    def compose(self, a: HopfAutomorphism, b: HopfAutomorphism) -> HopfAutomorphism:
        return aut_compose(a, b)

    def invert(self, a: HopfAutomorphism) -> HopfAutomorphism:
        return aut_invert(a)

    def identity(self) -> HopfAutomorphism:
        return identity_automorphism(self.hopf)


@dataclass(frozen=True)
class Classifier:
    hopf: CgkmmHopf
    der_basis: tuple[HopfDerivation, ...]
    der_lie: LieAlgebra
    aut_group: AutGroup
    materialized: CgkmmHopf | None = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def der_dim(self) -> int:
        return len(self.der_basis)

    def coordinates(self, psi: HopfDerivation) -> linalg.Vector:
        c = in_span(self.der_basis, psi)
        if c is None:
            raise CertificationError("derivation is outside the solved space", witness=psi.describe())
        return c

    def derivation(self, coords) -> HopfDerivation:
        out = zero_derivation(self.hopf)
        for c, psi in zip(coords, self.der_basis):
            if c:
                out = out + c * psi
        return out

    def rho_bar(self, phi: HopfAutomorphism) -> linalg.Matrix:
        """Matrix of ``psi -> phi o psi o phi^-1`` on the derivation basis."""
        cols = [self.coordinates(conjugate_derivation(phi, psi)) for psi in self.der_basis]
        return linalg.from_columns(cols, self.der_dim) if self.der_dim else ()

    def describe(self) -> dict:
        out = {
            "derivation_dim": self.der_dim,
            "derivations": [psi.describe() for psi in self.der_basis],
            "automorphisms_enumerable": self.aut_group.enumerable,
        }
        if self.aut_group.enumerable:
            out["automorphism_group_order"] = len(self.aut_group.elements)
        return out


def _der_lie(H: CgkmmHopf, basis: Sequence[HopfDerivation]) -> LieAlgebra:
    k = len(basis)
    table = []
    for i in range(k):
        row = []
        for j in range(k):
            br = derivation_bracket(basis[j], basis[i])
            c = linalg.solve([b.vector for b in basis], br.vector)
            if c is None:
                raise CertificationError("derivations are not closed under the bracket", witness=(i, j))
            row.append(tuple(c))
        table.append(tuple(row))
    L = LieAlgebra(tuple(f"D{i + 1}" for i in range(k)), tuple(table))
    L.validate()
    return L


def build_classifier(H: CgkmmHopf, degree: int = 3) -> Classifier:
    basis = tuple(hopf_derivations(H, degree))
    der_lie = _der_lie(H, basis)
    if H.n == 0:
        auts = tuple(HopfAutomorphism(H, (), tuple(b)) for b in enumerate_automorphisms(H.group))
        aut = AutGroup(H, auts)
    else:
        aut = AutGroup(H, None)
    cls = Classifier(H, basis, der_lie, aut)
    if aut.enumerable:
        T, _ = classifier_piece(cls, aut.elements)
        object.__setattr__(cls, "materialized", T)
    return cls


def _closure(cls: Classifier, gens: Sequence[HopfAutomorphism]) -> list[HopfAutomorphism]:
    elems = [identity_automorphism(cls.hopf)]
    seen = {elems[0]}
    frontier = list(elems)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = aut_compose(a, g)
                if c not in seen:
                    if len(elems) >= GAMMA_BOUND:
                        raise AutomorphismEnumerationInfeasible("automorphisms generate a large or infinite group")
                    seen.add(c)
                    elems.append(c)
                    nxt.append(c)
        frontier = nxt
    return elems


def classifier_piece(cls: Classifier, automorphisms: Sequence[HopfAutomorphism]) -> tuple[CgkmmHopf, list[HopfAutomorphism]]:
    """``U(Der_Hopf(H)) x| K[Gamma]`` for the group ``Gamma`` generated by ``automorphisms``.

    Labels of ``Gamma`` follow the returned list (identity first).
    """
    memo = cls._cache.setdefault("pieces", {})
    key = tuple(automorphisms)
    if key in memo:
        return memo[key]
    elems = _closure(cls, list(automorphisms))
    pos = {a: i for i, a in enumerate(elems)}
    product = [[pos[aut_compose(a, b)] for b in elems] for a in elems]
    gens = tuple(sorted({pos[a] for a in automorphisms} - {0}))
    G = group_from_table(product, gens)
    mats = tuple(cls.rho_bar(a) for a in elems)
    tau = LinearRep(G, cls.der_dim, mats)
    T = make_cgkmm(G, cls.der_lie, tau, f"[{cls.hopf.name}]" if cls.hopf.name else "")
    memo[key] = (T, elems)
    return T, elems


@dataclass(frozen=True)
class StarAction:
    """``(psi (x) phi) * h = psi(phi(h))`` of a piece of ``[H]`` on ``H``."""

    actor: CgkmmHopf
    target: CgkmmHopf
    automorphisms: tuple[HopfAutomorphism, ...]
    derivations: tuple[HopfDerivation, ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def act_key(self, bkey, akey) -> dict:
        memo = self._cache.setdefault("act", {})
        if (bkey, akey) in memo:
            return memo[(bkey, akey)]
        m, g = bkey
        cur = self.automorphisms[g].apply({akey: ONE})
        for i in reversed(pbw.word(m)):
            cur = self.derivations[i].apply(cur)
        memo[(bkey, akey)] = cur
        return cur


def star_action(cls: Classifier, psi: HopfDerivation | None, phi: HopfAutomorphism | None, h) -> dict:
    """``psi(phi(h))``; ``None`` stands for the unit of the respective factor."""
    from .hopf import HopfElement

    terms = h.terms if isinstance(h, HopfElement) else h
    out = phi.apply(terms) if phi is not None else dict(terms)
    if psi is not None:
        out = psi.apply(out)
    return HopfElement(cls.hopf, out) if isinstance(h, HopfElement) else out


def star_module(cls: Classifier, automorphisms: Sequence[HopfAutomorphism]) -> StarAction:
    T, elems = classifier_piece(cls, automorphisms)
    return StarAction(T, cls.hopf, tuple(elems), cls.der_basis)


def verify_star_axioms(cls: Classifier, automorphisms: Sequence[HopfAutomorphism] = (), degree: int = 3) -> Report:
    """The module Hopf algebra axioms for the star action of a piece of ``[H]``."""
    if not automorphisms:
        automorphisms = cls.aut_group.elements if cls.aut_group.enumerable else [cls.aut_group.identity()]
    return verify_module_axioms(star_module(cls, automorphisms), degree, "star-action")


def verify_rho_bar(cls: Classifier, samples: Sequence[HopfAutomorphism]) -> Report:
    """Structural axioms of the conjugation action on ``Der_Hopf(H)``."""
    log = CheckLog(["stability", "identity", "multiplicative", "bracket preserving"])
    ident = identity_automorphism(cls.hopf)
    for psi in cls.der_basis:
        if conjugate_derivation(ident, psi) != psi:
            log.fail("identity", psi.describe())
    for a in samples:
        for psi in cls.der_basis:
            if in_span(cls.der_basis, conjugate_derivation(a, psi)) is None:
                log.fail("stability", {"phi": a.describe(), "psi": psi.describe()})
        for b in samples:
            ab = aut_compose(a, b)
            for psi in cls.der_basis:
                lhs = conjugate_derivation(ab, psi)
                rhs = conjugate_derivation(a, conjugate_derivation(b, psi))
                if lhs != rhs:
                    log.fail("multiplicative", {"phi": a.describe(), "phi'": b.describe()})
        for p in cls.der_basis:
            for q in cls.der_basis:
                lhs = conjugate_derivation(a, derivation_bracket(p, q))
                rhs = derivation_bracket(conjugate_derivation(a, p), conjugate_derivation(a, q))
                if lhs != rhs:
                    log.fail("bracket preserving", {"phi": a.describe()})
    return log.report("rho-bar", samples=len(samples))


# -- universal morphisms ------------------------------------------------------

@dataclass(frozen=True)
class UniversalMorphism:
    classifier: Classifier
    extension: SplitExtension
    chi_group: tuple[HopfAutomorphism, ...]
    chi_lie: tuple[linalg.Vector, ...]
    morphism: HopfMorphism
    certification: Report

    def describe(self) -> dict:
        B = self.extension.quotient
        return {
            "chi_group": {B.group.label(g): self.chi_group[g].describe() for g in B.group.elements},
            "chi_lie": {
                B.lie.names[i]: self.classifier.der_lie.format_vector(self.chi_lie[i]) for i in range(B.n)
            },
            "target_group_order": self.morphism.target.group.order,
        }


def _diagram_defect(ext: SplitExtension, cls: Classifier, grp, lie, bkey, hkey):
    """``k(chi(b) * h) - s(b_1) k(h) S(s(b_2))`` computed in the total algebra."""
    E, B = ext.total, ext.quotient
    m, g = bkey
    cur = grp[g].apply({hkey: ONE})
    for i in reversed(pbw.word(m)):
        cur = cls.derivation(lie[i]).apply(cur)
    lhs = ext.k.apply(cur)
    rhs: dict = {}
    kh = ext.k.on_key(hkey)
    for (x, y), c in B.coproduct({bkey: ONE}).items():
        left = E.multiply(ext.s.on_key(x), kh)
        pbw.add_into(rhs, E.multiply(left, E.antipode(ext.s.on_key(y))), c)
    pbw.add_into(lhs, rhs, -ONE)
    return lhs


def _diagram_fails(ext, cls, grp, lie, bkeys, hkeys):
    for b in bkeys:
        for h in hkeys:
            if _diagram_defect(ext, cls, grp, lie, b, h):
                return [ext.quotient.format_key(b), ext.kernel.format_key(h)]
    return None


def _generator_keys(H: CgkmmHopf) -> list:
    return [(pbw.one_mono(H.n), g) for g in H.group.elements] + [
        (pbw.letter_mono(H.n, i), 0) for i in range(H.n)
    ]


def perturbations(cls: Classifier, chi_group, chi_lie, count: int = 3) -> list[tuple[tuple, tuple]]:
    """Competitors differing from ``(chi_group, chi_lie)`` on generators, deterministic."""
    H = cls.hopf
    if cls.aut_group.enumerable:
        alts = list(cls.aut_group.elements)
    else:
        alts = candidate_automorphisms(H)
    G_order = len(chi_group)
    group_moves = []
    for g in list(range(1, G_order)) + [0]:
        for phi in alts:
            if phi != chi_group[g]:
                group_moves.append((g, phi))
                break
    lie_moves = []
    for i in range(len(chi_lie)):
        for j in range(cls.der_dim):
            lie_moves.append((i, j))
    out = []
    gi = li = 0
    while len(out) < count and (gi < len(group_moves) or li < len(lie_moves)):
        if li < len(lie_moves) and (len(out) % 2 == 1 or gi >= len(group_moves)):
            i, j = lie_moves[li]
            li += 1
            lie2 = list(chi_lie)
            lie2[i] = linalg.add(lie2[i], linalg.unit_vector(cls.der_dim, j))
            out.append((tuple(chi_group), tuple(lie2)))
        elif gi < len(group_moves):
            g, phi = group_moves[gi]
            gi += 1
            grp2 = list(chi_group)
            grp2[g] = phi
            out.append((tuple(grp2), tuple(chi_lie)))
    # further group moves: second alternative per element
    if len(out) < count:
        for g in list(range(1, G_order)) + [0]:
            for phi in alts:
                cand = list(chi_group)
                cand[g] = phi
                cand = tuple(cand)
                if phi != chi_group[g] and all(cand != o[0] or chi_lie != o[1] for o in out):
                    out.append((cand, tuple(chi_lie)))
                    if len(out) >= count:
                        return out
    # finally, maps changed on several elements at once
    if len(out) < count:
        choices = [alts[:4] for _ in range(G_order)]
        for cand in itertools.islice(itertools.product(*choices), 10000):
            if cand != tuple(chi_group) and all(cand != o[0] or tuple(chi_lie) != o[1] for o in out):
                out.append((cand, tuple(chi_lie)))
                if len(out) >= count:
                    break
    return out


def universal_morphism(ext: SplitExtension, degree: int = 3, competitors: int = 3) -> UniversalMorphism:
    """``chi: B -> [H]`` for a split extension with kernel ``H``, with certification.

    (a) ``chi`` is a valid morphism into a materialised piece of ``[H]``;
    (b) ``k(chi(b) * h) = s(b_1) k(h) S(s(b_2))`` in the total algebra for all
        basis ``b`` of degree ``<= 1`` and ``h`` of degree ``<= 2``;
    (c) perturbed competitors fail (b) on generators.
    """
    H, B = ext.kernel, ext.quotient
    rho = ext.action
    cls = build_classifier(H, degree)
    chi_group = tuple(rho.grp_part)
    chi_lie = tuple(cls.coordinates(psi) for psi in rho.lie_part)
    T, elems = classifier_piece(cls, chi_group)
    pos = {a: i for i, a in enumerate(elems)}
    beta = tuple(pos[a] for a in chi_group)
    alpha = linalg.from_columns(list(chi_lie), cls.der_dim) if cls.der_dim else ()
    log = CheckLog(["(a) morphism", "(b) diagram", "(c) uniqueness"])
    phi = HopfMorphism(B, T, alpha if cls.der_dim else (), beta)
    bad = morphism_witness(phi)
    if bad is not None:
        log.fail("(a) morphism", {"reason": bad[0], "witness": bad[1]})
    bkeys = [k for k in B.basis(1)]
    hkeys = H.basis(min(degree, 2))
    fail = _diagram_fails(ext, cls, chi_group, chi_lie, bkeys, hkeys)
    if fail is not None:
        log.fail("(b) diagram", fail)
    comps = perturbations(cls, chi_group, chi_lie, competitors)
    rejected = []
    gens_b, gens_h = _generator_keys(B), _generator_keys(H)
    for grp2, lie2 in comps:
        w = _diagram_fails(ext, cls, grp2, lie2, gens_b, gens_h)
        rejected.append(w)
        if w is None:
            log.fail("(c) uniqueness", "a perturbed competitor satisfies the diagram")
    rep = log.report(
        "universal",
        competitors=len(comps),
        rejected=sum(w is not None for w in rejected),
        rejection_witnesses=rejected,
    )
    return UniversalMorphism(cls, ext, chi_group, chi_lie, phi, rep)


def certified_universal_morphism(ext: SplitExtension, degree: int = 3) -> UniversalMorphism:
    u = universal_morphism(ext, degree)
    if not u.certification.passed:
        raise CertificationError("universal morphism certification failed", witness=u.certification.payload)
    return u
