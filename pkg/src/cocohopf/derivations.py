"""Hopf derivations and Hopf automorphisms of ``U(L) x| K[G]`` in coordinates.

A Hopf derivation is recorded as ``(delta, d)``: ``delta`` is its restriction
to the primitives ``L`` and ``d(g)`` is defined by ``psi(g) = d(g) g``.  The
induced endomorphism is ``psi(u g) = delta~(u) g + u d(g) g`` where
``delta~`` is the Leibniz extension of ``delta`` to ``U(L)``.

With the product orientation of :mod:`cocohopf.pbw` (algebra commutator
``uv - vu = [v, u]``), expanding ``psi(g x g^-1)`` gives the twisted
equivariance constraint

    delta(tau_g x) - tau_g(delta x) = [tau_g x, d(g)].
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg, pbw
from .errors import CertificationError, ValidationError
from .groups import compose_maps, invert_map, is_cocycle, is_homomorphism
from .hopf import CgkmmHopf, HopfMorphism, tensor_apply
from .lie import is_derivation, is_lie_automorphism
from .linalg import ONE, ZERO
from .report import CheckLog, Report


@dataclass(frozen=True)
class HopfDerivation:
    hopf: CgkmmHopf
    delta: linalg.Matrix
    d: tuple[linalg.Vector, ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __eq__(self, other):
        return (
            isinstance(other, HopfDerivation)
            and self.hopf == other.hopf
            and self.delta == other.delta
            and self.d == other.d
        )

    __hash__ = None

    @property
    def vector(self) -> linalg.Vector:
        """Flattening: ``delta`` row major, then ``d`` by group label."""
        return tuple(itertools.chain(*self.delta, *self.d))

    def delta_of(self, v) -> linalg.Vector:
        return linalg.mat_vec(self.delta, v) if self.hopf.n else ()

    def letter_images(self) -> list[dict]:
        if "letters" not in self._cache:
            H = self.hopf
            self._cache["letters"] = pbw.linear_letter_images(self.delta, H.n, H.n)
        return self._cache["letters"]

    def on_key(self, key) -> dict:
        memo = self._cache.setdefault("keys", {})
        if key in memo:
            return memo[key]
        H = self.hopf
        m, g = key
        out: dict = {}
        for t, c in pbw.apply_derivation(H.lie, self.letter_images(), {m: ONE}).items():
            pbw.add_into(out, {(t, g): c})
        dg = pbw.from_vector(self.d[g]) if H.n else {}
        if dg:
            for t, c in pbw.mul(H.lie, {m: ONE}, dg).items():
                pbw.add_into(out, {(t, g): c})
        memo[key] = out
        return out

    def apply(self, u) -> dict:
        out: dict = {}
        for k, c in u.items():
            pbw.add_into(out, self.on_key(k), c)
        return out

    def __add__(self, other: "HopfDerivation") -> "HopfDerivation":
        return derivation_from_vector(self.hopf, linalg.add(self.vector, other.vector))

    def __sub__(self, other: "HopfDerivation") -> "HopfDerivation":
        return derivation_from_vector(self.hopf, linalg.sub(self.vector, other.vector))

    def __rmul__(self, c) -> "HopfDerivation":
        return derivation_from_vector(self.hopf, linalg.scale(c, self.vector))

    def is_zero(self) -> bool:
        return linalg.is_zero(self.vector)

    def describe(self) -> dict:
        H = self.hopf
        L = H.lie
        return {
            "delta": {L.names[i]: L.format_vector(linalg.column(self.delta, i)) for i in range(H.n)},
            "d": {H.group.label(g): L.format_vector(self.d[g]) for g in H.group.elements if H.n},
        }


def derivation_from_vector(H: CgkmmHopf, vec) -> HopfDerivation:
    n = H.n
    vec = linalg.vector(vec)
    delta = tuple(tuple(vec[r * n:(r + 1) * n]) for r in range(n))
    off = n * n
    d = tuple(tuple(vec[off + g * n: off + (g + 1) * n]) for g in H.group.elements)
    return HopfDerivation(H, delta, d)


def make_derivation(H: CgkmmHopf, delta, d=None) -> HopfDerivation:
    """Derivation from ``delta`` and the values ``d(g)`` (zero when omitted)."""
    n = H.n
    delta = linalg.matrix(delta) if n else ()
    if d is None:
        d = [linalg.zero_vector(n)] * H.group.order
    elif isinstance(d, dict):
        d = [linalg.vector(d.get(g, linalg.zero_vector(n))) for g in H.group.elements]
    d = tuple(linalg.vector(v) for v in d)
    if len(delta) != n or any(len(r) != n for r in delta) or len(d) != H.group.order:
        raise ValidationError("derivation coordinates have the wrong shape")
    psi = HopfDerivation(H, delta, d)
    bad = derivation_witness(psi)
    if bad is not None:
        raise ValidationError(bad[0], witness=bad[1])
    return psi


def derivation_witness(psi: HopfDerivation):
    """First violated coordinate constraint, or None."""
    H = psi.hopf
    L, G = H.lie, H.group
    if H.n and not is_derivation(L, psi.delta):
        return "delta is not a derivation of L", None
    if not is_cocycle(G, H.tau, psi.d):
        return "d is not a 1-cocycle", None
    for g in G.elements:
        for i in range(H.n):
            w = H.tau.act(g, L.unit(i))
            lhs = linalg.sub(psi.delta_of(w), H.tau.act(g, psi.delta_of(L.unit(i))))
            rhs = L.bracket(w, psi.d[g])
            if lhs != rhs:
                return "twisted equivariance fails", {"g": G.label(g), "x": L.names[i]}
    return None


def zero_derivation(H: CgkmmHopf) -> HopfDerivation:
    return derivation_from_vector(H, linalg.zero_vector(H.n * H.n + H.n * H.group.order))


def _constraint_rows(H: CgkmmHopf) -> list[dict]:
    n, G, L = H.n, H.group, H.lie
    off = n * n
    rows: list[dict] = []

    def new():
        rows.append({})
        return rows[-1]

    def put(row, col, val):
        if val:
            v = row.get(col, ZERO) + val
            if v:
                row[col] = v
            else:
                row.pop(col, None)

    # (i) delta [e_i, e_j] = [delta e_i, e_j] + [e_i, delta e_j]
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                row = new()
                for m, c in enumerate(L.brackets[i][j]):
                    put(row, k * n + m, c)
                for m in range(n):
                    put(row, m * n + i, -L.brackets[m][j][k])
                    put(row, m * n + j, -L.brackets[i][m][k])
    # (ii) d(gh) = d(g) + tau_g d(h)
    for g in G.elements:
        T = H.tau(g)
        for h in G.elements:
            gh = G.product[g][h]
            for k in range(n):
                row = new()
                put(row, off + gh * n + k, ONE)
                put(row, off + g * n + k, -ONE)
                for j in range(n):
                    put(row, off + h * n + j, -T[k][j])
    # (iii) delta(tau_g e_i) - tau_g delta(e_i) - [tau_g e_i, d(g)] = 0
    for g in G.elements:
        T = H.tau(g)
        for i in range(n):
            w = linalg.column(T, i)
            for k in range(n):
                row = new()
                for j in range(n):
                    put(row, k * n + j, w[j])
                for r in range(n):
                    put(row, r * n + i, -T[k][r])
                for j in range(n):
                    put(row, off + g * n + j, -L.bracket(w, L.unit(j))[k])
    return [r for r in rows if r]


def solve_derivations(H: CgkmmHopf) -> list[HopfDerivation]:
    """Reduced echelon basis of the solutions of constraints (i)-(iii)."""
    size = H.n * H.n + H.n * H.group.order
    ech = linalg.Echelon(size, _constraint_rows(H))
    return [derivation_from_vector(H, v) for v in ech.nullspace()]


def certify_derivation(psi: HopfDerivation, degree: int = 3) -> Report:
    """Leibniz and co-Leibniz rules of the induced endomorphism on degree ``<= degree``."""
    H = psi.hopf
    log = CheckLog(["unit", "counit", "Leibniz", "co-Leibniz"])
    one_key = (pbw.one_mono(H.n), 0)
    log.check("unit", not psi.on_key(one_key), "psi(1)")
    basis = H.basis(degree)
    deg = {k: pbw.degree(k[0]) for k in basis}
    for k in basis:
        img = psi.on_key(k)
        if H.counit(img):
            log.fail("counit", H.format_key(k))
        dk = H.coproduct({k: ONE})
        lhs = H.coproduct(img)
        rhs = tensor_apply(dk, 0, psi.on_key)
        pbw.add_into(rhs, tensor_apply(dk, 1, psi.on_key))
        if lhs != rhs:
            log.fail("co-Leibniz", H.format_key(k))
    for k1 in basis:
        for k2 in basis:
            if deg[k1] + deg[k2] > degree:
                continue
            lhs = psi.apply(H.mul_keys(k1, k2))
            rhs = H.multiply(psi.on_key(k1), {k2: ONE})
            pbw.add_into(rhs, H.multiply({k1: ONE}, psi.on_key(k2)))
            if lhs != rhs:
                log.fail("Leibniz", [H.format_key(k1), H.format_key(k2)])
    return log.report("derivation", degree=degree, derivation=psi.describe())


def hopf_derivations(H: CgkmmHopf, degree: int = 3, certify: bool = True) -> list[HopfDerivation]:
    basis = solve_derivations(H)
    if certify:
        for psi in basis:
            rep = certify_derivation(psi, degree)
            if not rep.passed:
                raise CertificationError("solver output is not a Hopf derivation", witness=rep.payload)
    return basis


def extract_derivation(H: CgkmmHopf, endo) -> HopfDerivation:
    """Read ``(delta, d)`` off an endomorphism given on basis keys.

    Raises :class:`CertificationError` when the values on generators are not
    of the shape a Hopf derivation must have.
    """
    n, G = H.n, H.group
    cols = []
    for i in range(n):
        img = endo((pbw.letter_mono(n, i), 0))
        v = [ZERO] * n
        for (m, g), c in img.items():
            if g != 0 or pbw.degree(m) != 1:
                raise CertificationError("image of a primitive is not primitive", witness=H.format(img))
            v[m.index(1)] = c
        cols.append(tuple(v))
    delta = linalg.from_columns(cols, n) if n else ()
    d = []
    for g in G.elements:
        img = endo((pbw.one_mono(n), g))
        v = [ZERO] * n
        for (m, h), c in img.items():
            if h != g or pbw.degree(m) != 1:
                raise CertificationError("image of a grouplike is not in L*g", witness=H.format(img))
            v[m.index(1)] = c
        d.append(tuple(v))
    return HopfDerivation(H, delta, tuple(d))


def derivation_bracket(psi1: HopfDerivation, psi2: HopfDerivation) -> HopfDerivation:
    """``psi1 o psi2 - psi2 o psi1``, composed on generators and re-extracted."""
    H = psi1.hopf

    def endo(key):
        out = psi1.apply(psi2.on_key(key))
        pbw.add_into(out, psi2.apply(psi1.on_key(key)), -ONE)
        return out

    return extract_derivation(H, endo)


def in_span(basis: Sequence[HopfDerivation], psi: HopfDerivation) -> linalg.Vector | None:
    """Coordinates of ``psi`` in ``basis`` or None."""
    return linalg.solve([b.vector for b in basis], psi.vector)


# -- automorphisms -----------------------------------------------------------

@dataclass(frozen=True)
class HopfAutomorphism:
    hopf: CgkmmHopf
    alpha: linalg.Matrix
    beta: tuple[int, ...]

    def __eq__(self, other):
        return (
            isinstance(other, HopfAutomorphism)
            and self.hopf == other.hopf
            and self.alpha == other.alpha
            and self.beta == other.beta
        )

    def __hash__(self):
        return hash((self.alpha, self.beta))

    @property
    def morphism(self) -> HopfMorphism:
        return HopfMorphism(self.hopf, self.hopf, self.alpha, self.beta)

    def apply(self, u) -> dict:
        return self.morphism.apply(u)

    def describe(self) -> dict:
        H = self.hopf
        return {
            "alpha": [[linalg.format_fraction(x) for x in row] for row in self.alpha],
            "beta": {H.group.label(g): H.group.label(self.beta[g]) for g in H.group.elements},
        }


def aut_membership(H: CgkmmHopf, alpha, beta) -> bool:
    n, G = H.n, H.group
    alpha = linalg.matrix(alpha) if n else ()
    beta = tuple(beta)
    if len(alpha) != n or any(len(r) != n for r in alpha):
        return False
    if len(beta) != G.order or sorted(beta) != list(G.elements):
        return False
    if is_homomorphism(G, G, beta) is not None:
        return False
    if not is_lie_automorphism(H.lie, alpha):
        return False
    return all(
        linalg.mat_mul(alpha, H.tau(g)) == linalg.mat_mul(H.tau(beta[g]), alpha) for g in G.elements
    ) if n else True


def make_automorphism(H: CgkmmHopf, alpha, beta=None) -> HopfAutomorphism:
    if beta is None:
        beta = tuple(H.group.elements)
    if not aut_membership(H, alpha, beta):
        raise ValidationError("not a Hopf automorphism")
    return HopfAutomorphism(H, linalg.matrix(alpha) if H.n else (), tuple(beta))


def identity_automorphism(H: CgkmmHopf) -> HopfAutomorphism:
    return HopfAutomorphism(H, linalg.identity(H.n), tuple(H.group.elements))


def aut_compose(phi: HopfAutomorphism, chi: HopfAutomorphism) -> HopfAutomorphism:
    """``phi o chi``."""
    alpha = linalg.mat_mul(phi.alpha, chi.alpha) if phi.hopf.n else ()
    return HopfAutomorphism(phi.hopf, alpha, compose_maps(phi.beta, chi.beta))


def aut_invert(phi: HopfAutomorphism) -> HopfAutomorphism:
    alpha = linalg.inverse(phi.alpha) if phi.hopf.n else ()
    return HopfAutomorphism(phi.hopf, alpha, invert_map(phi.beta))


def conjugate_derivation(phi: HopfAutomorphism, psi: HopfDerivation) -> HopfDerivation:
    """``phi o psi o phi^-1``: ``delta' = alpha delta alpha^-1``, ``d'(g) = alpha d(beta^-1 g)``."""
    H = psi.hopf
    if not H.n:
        return psi
    a_inv = linalg.inverse(phi.alpha)
    delta = linalg.mat_mul(linalg.mat_mul(phi.alpha, psi.delta), a_inv)
    binv = invert_map(phi.beta)
    d = tuple(linalg.mat_vec(phi.alpha, psi.d[binv[g]]) for g in H.group.elements)
    return HopfDerivation(H, delta, d)


def candidate_automorphisms(H: CgkmmHopf, limit: int = 64) -> list[HopfAutomorphism]:
    """Some Hopf automorphisms, identity first (for sampling and perturbation)."""
    from .groups import enumerate_automorphisms

    n = H.n
    betas = enumerate_automorphisms(H.group)
    alphas = []
    for diag in itertools.product((1, -1, 2), repeat=n):
        alphas.append(tuple(tuple(Fraction(diag[i]) if i == j else ZERO for j in range(n)) for i in range(n)))
    for perm in itertools.permutations(range(n)):
        alphas.append(tuple(tuple(ONE if perm[j] == i else ZERO for j in range(n)) for i in range(n)))
    out: list[HopfAutomorphism] = []
    seen = set()
    for beta in betas:
        for alpha in alphas:
            if (alpha, beta) in seen:
                continue
            seen.add((alpha, beta))
            if aut_membership(H, alpha, beta):
                out.append(HopfAutomorphism(H, alpha, tuple(beta)))
                if len(out) >= limit:
                    return out
    return out
