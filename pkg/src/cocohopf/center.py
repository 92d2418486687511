"""Conjugation actions, normality, centralizers ``C_A(H)``, the center and ``HZ(A)``.

The centralizer is read off the closed formula

    ker_grp = {g : g centralises G_H and tau(g) is the identity on L_H}
    ker_lie = {x : [x, L_H] = 0 and tau(n) x = x for n in G_H}

and certified against a truncated linear-algebra oracle.  The plain
commutant of ``H`` can be larger than ``C_A(H)`` (for ``A3`` in ``S3`` it
contains the sum of the transpositions), so the oracle keeps only the
elements ``x`` with ``Delta(x)`` in ``A (x) commutant``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg, pbw
from .action import HopfAction, action_make
from .derivations import HopfAutomorphism, HopfDerivation
from .errors import CertificationError, NormalityError
from .hopf import (
    CgkmmHopf,
    HopfSubalgebra,
    make_subalgebra,
    normality_witness,
    solution_space,
    whole,
)
from .lie import Subspace, lie_centralizer
from .linalg import ONE
from .report import CheckLog, Report


def conjugation_action(A: CgkmmHopf, H: HopfSubalgebra) -> HopfAction:
    """``a . h = a_1 h S(a_2)`` of ``A`` on a normal ``H`` (as its own CGKMM algebra)."""
    bad = normality_witness(A, H)
    if bad is not None:
        raise NormalityError(bad[0], witness=bad[1])
    Hh, emb = H.as_hopf()
    G = A.group
    sub = H.subgroup
    local = {g: i for i, g in enumerate(sub)}
    piv = H.lie.pivots()

    def coords(v):
        return tuple(v[p] for p in piv)

    grp = {}
    for g in G.elements:
        cols = [coords(A.tau.act(g, v)) for v in H.lie.basis]
        alpha = linalg.from_columns(cols, Hh.n) if Hh.n else ()
        beta = tuple(local[G.conj(g, n)] for n in sub)
        grp[g] = HopfAutomorphism(Hh, alpha, beta)
    lie = []
    L = A.lie
    for i in range(A.n):
        x = L.unit(i)
        # x h - h x = [h, x] for primitives; x n - n x = (x - tau(n)x) n
        cols = [coords(L.bracket(v, x)) for v in H.lie.basis]
        delta = linalg.from_columns(cols, Hh.n) if Hh.n else ()
        d = tuple(coords(linalg.sub(x, A.tau.act(n, x))) for n in sub)
        lie.append(HopfDerivation(Hh, delta, d))
    return action_make(A, Hh, grp, lie)


def _generator_terms(H: HopfSubalgebra) -> list[dict]:
    return H.generators()


def is_normal(A: CgkmmHopf, H: HopfSubalgebra, degree: int = 3) -> tuple[bool, Report]:
    """Generator-level normality conditions, cross-checked by the adjoint oracle."""
    bad = normality_witness(A, H)
    log = CheckLog(["generator conditions", "adjoint oracle"])
    if bad is not None:
        log.fail("generator conditions", bad[1], bad[0])
    gens = _generator_terms(H)
    oracle_fail = None
    for k in A.basis(degree):
        d = A.coproduct({k: ONE})
        for h in gens:
            left: dict = {}
            right: dict = {}
            for (a1, a2), c in d.items():
                pbw.add_into(left, A.multiply(A.multiply({a1: ONE}, h), A.antipode({a2: ONE})), c)
                pbw.add_into(right, A.multiply(A.multiply(A.antipode({a1: ONE}), h), {a2: ONE}), c)
            if not H.contains(left) or not H.contains(right):
                oracle_fail = {"a": A.format_key(k), "h": A.format(h)}
                break
        if oracle_fail:
            break
    if oracle_fail:
        log.fail("adjoint oracle", oracle_fail)
    gen_ok = bad is None
    if gen_ok != (oracle_fail is None):
        raise CertificationError(
            "generator-level normality disagrees with the adjoint oracle",
            witness={"generator": bad, "oracle": oracle_fail},
        )
    return gen_ok, log.report("normal", degree=degree, subalgebra=H.describe())


@dataclass(frozen=True)
class CentralizerResult:
    subalgebra: HopfSubalgebra
    ker_grp: tuple[int, ...]
    ker_lie: Subspace
    certification: Report

    def describe(self) -> dict:
        return self.subalgebra.describe()


def centralizer_formula(A: CgkmmHopf, H: HopfSubalgebra) -> HopfSubalgebra:
    G, L = A.group, A.lie
    ker_grp = [
        g
        for g in G.elements
        if all(G.product[g][n] == G.product[n][g] for n in H.subgroup)
        and all(A.tau.act(g, v) == v for v in H.lie.basis)
    ]
    cent = lie_centralizer(L, H.lie)
    fixed_rows = []
    for n in H.subgroup:
        fixed_rows.extend(linalg.mat_sub(A.tau(n), linalg.identity(A.n)) if A.n else ())
    fixed = Subspace(A.n, linalg.nullspace(fixed_rows, A.n))
    return make_subalgebra(A, ker_grp, cent.intersect(fixed).basis)


def commutant_space(A: CgkmmHopf, gens: Sequence[dict], degree: int) -> linalg.Echelon:
    """Elements of degree ``<= degree`` commuting with every element of ``gens``."""
    keys = A.basis(degree)
    gens = list(gens)

    def image(k):
        out: dict = {}
        for j, h in enumerate(gens):
            c = A.multiply({k: ONE}, h)
            pbw.add_into(c, A.multiply(h, {k: ONE}), -ONE)
            for key, v in c.items():
                out[(j, key)] = v
        return out

    return linalg.Echelon(len(keys), solution_space(keys, image))


def coproduct_refinement(A: CgkmmHopf, comm: linalg.Echelon, degree: int) -> linalg.Echelon:
    """``{x : Delta(x) in A (x) comm}`` inside degree ``<= degree``."""
    keys = A.basis(degree)
    idx = A.index(degree)

    def image(k):
        legs: dict = {}
        for (a, b), c in A.coproduct({k: ONE}).items():
            legs.setdefault(a, {})[idx[b]] = legs.get(a, {}).get(idx[b], 0) + c
        out: dict = {}
        for a, vec in legs.items():
            for col, v in comm.reduce(vec).items():
                out[(a, col)] = v
        return out

    return linalg.Echelon(len(keys), solution_space(keys, image))


def certify_centralizer(A: CgkmmHopf, H: HopfSubalgebra, C: HopfSubalgebra, degree: int = 3) -> Report:
    log = CheckLog(["commutes with generators", "formula within oracle", "oracle within formula"])
    gens = _generator_terms(H)
    for u in C.spanning_set(degree):
        for h in gens:
            if A.multiply(u, h) != A.multiply(h, u):
                log.fail("commutes with generators", {"c": A.format(u), "h": A.format(h)})
    dims = []
    for k in range(degree + 1):
        comm = commutant_space(A, gens, k)
        oracle = coproduct_refinement(A, comm, k)
        claimed = C.echelon(k)
        for row in claimed.rows():
            if not oracle.contains(row):
                log.fail("formula within oracle", {"degree": k})
        for row in oracle.rows():
            if not claimed.contains(row):
                keys = A.basis(k)
                log.fail("oracle within formula", {"degree": k, "element": A.format({keys[i]: c for i, c in enumerate(row) if c})})
        dims.append({"degree": k, "formula": claimed.rank, "oracle": oracle.rank, "commutant": comm.rank})
    return log.report("centralizer", degree=degree, filtered_dimensions=dims)


def centralizer(A: CgkmmHopf, H: HopfSubalgebra, degree: int = 3, certify: bool = True) -> CentralizerResult:
    bad = normality_witness(A, H)
    if bad is not None:
        raise NormalityError(bad[0], witness=bad[1])
    C = centralizer_formula(A, H)
    rep = certify_centralizer(A, H, C, degree) if certify else None
    if rep is not None and not rep.passed:
        raise CertificationError("centralizer certification failed", witness=rep.payload)
    return CentralizerResult(C, C.subgroup, C.lie, rep)


def center(A: CgkmmHopf, degree: int = 3, certify: bool = True) -> CentralizerResult:
    return centralizer(A, whole(A), degree, certify)


def _graded(filtered: Sequence[int]) -> list[int]:
    return [filtered[0]] + [filtered[i] - filtered[i - 1] for i in range(1, len(filtered))]


def hz_compare(A: CgkmmHopf, degree: int = 3) -> Report:
    """Truncated algebraic center, the coproduct criterion space and ``Z(A)``."""
    log = CheckLog(["HZ equals Z(A)"])
    Z = center(A, degree).subalgebra
    alg, hz, za = [], [], []
    basis_terms = [{key: ONE} for key in A.basis(degree)]
    for k in range(degree + 1):
        comm = commutant_space(A, basis_terms, k)
        crit = coproduct_refinement(A, comm, k)
        zk = Z.echelon(k)
        alg.append(comm.rank)
        hz.append(crit.rank)
        za.append(zk.rank)
        same = crit.rank == zk.rank and all(crit.contains(r) for r in zk.rows())
        log.check("HZ equals Z(A)", same, {"degree": k})
    return log.report(
        "hz-compare",
        algebra=A.name,
        degree=degree,
        quantification="commutation with all basis elements of degree <= the bound",
        graded_dimensions={"algebraic_center": _graded(alg), "hz": _graded(hz), "center": _graded(za)},
        center=Z.describe(),
    )
