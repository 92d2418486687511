"""Cocommutative Hopf algebras ``U(L) x| K[G]`` in CGKMM coordinates.

A basis element is a key ``(monomial, g)`` standing for ``m * g`` where ``m``
is a PBW monomial of ``U(L)`` and ``g`` a group label.  The product is

    (u g)(u' g') = u * tau_g(u') * g g'

and the coalgebra structure makes ``L`` primitive and ``G`` grouplike.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from . import linalg, pbw
from .errors import (
    CertificationError,
    MorphismError,
    NormalityError,
    ValidationError,
)
from .groups import (
    GroupTable,
    LinearRep,
    generated_subgroup,
    group_homomorphisms,
    is_homomorphism,
    is_normal_subgroup,
    quotient_group,
    subgroup as make_group_subgroup,
    trivial_group,
    trivial_rep,
)
from .lie import (
    LieAlgebra,
    LieHom,
    LieQuotient,
    Subspace,
    hom_witness,
    is_lie_automorphism,
    is_subalgebra,
    jacobi_witness,
    quotient_by_ideal,
    quotient_by_ideal_closure,
    restrict_subalgebra,
    zero_lie,
)
from .linalg import ONE, ZERO
from .report import CheckLog, Report

Key = tuple  # (monomial, group label)


@dataclass(frozen=True)
class CgkmmHopf:
    """``U(lie) x| K[group]`` with ``group`` acting on ``lie`` through ``tau``."""

    group: GroupTable
    lie: LieAlgebra
    tau: LinearRep
    name: str = field(default="", compare=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def n(self) -> int:
        return self.lie.dim

    def basis(self, degree: int) -> list[Key]:
        """Basis keys of PBW degree ``<= degree``, by degree, then word, then label."""
        memo = self._cache.setdefault("basis", {})
        if degree not in memo:
            memo[degree] = [(m, g) for m in pbw.monomials(self.n, degree) for g in self.group.elements]
        return memo[degree]

    def index(self, degree: int) -> dict[Key, int]:
        memo = self._cache.setdefault("index", {})
        if degree not in memo:
            memo[degree] = {k: i for i, k in enumerate(self.basis(degree))}
        return memo[degree]

    def describe(self) -> dict:
        G, L = self.group, self.lie
        brackets = {
            f"[{L.names[i]},{L.names[j]}]": L.format_vector(L.brackets[i][j])
            for i in range(L.dim)
            for j in range(i + 1, L.dim)
            if any(L.brackets[i][j])
        }
        return {
            "name": self.name,
            "group_order": G.order,
            "group": [G.label(g) for g in G.elements],
            "lie_basis": list(L.names),
            "brackets": brackets,
            "tau": {
                G.label(g): [[linalg.format_fraction(x) for x in row] for row in self.tau(g)]
                for g in G.generating_set()
            },
        }

    # -- elements ---------------------------------------------------------
    def element(self, terms: Mapping[Key, Fraction] | None = None) -> "HopfElement":
        return HopfElement(self, terms or {})

    def one(self) -> "HopfElement":
        return HopfElement(self, {(pbw.one_mono(self.n), 0): ONE})

    def group_element(self, g: int) -> "HopfElement":
        return HopfElement(self, {(pbw.one_mono(self.n), g): ONE})

    def lie_element(self, v: Sequence[Fraction], g: int = 0) -> "HopfElement":
        return HopfElement(self, {(m, g): c for m, c in pbw.from_vector(linalg.vector(v)).items()})

    def generator(self, name: str) -> "HopfElement":
        return self.lie_element(self.lie.unit(self.lie.index(name)))

    def basis_element(self, key: Key) -> "HopfElement":
        return HopfElement(self, {key: ONE})

    def format_key(self, key: Key) -> str:
        m, g = key
        u = pbw.format_element(self.lie.names, {m: ONE})
        if g == 0:
            return u
        lab = self.group.label(g)
        return lab if u == "1" else f"{u}*{lab}"

    def format(self, terms: Mapping[Key, Fraction]) -> str:
        if not terms:
            return "0"
        parts = []
        for k in sorted(terms, key=lambda k: (pbw.degree(k[0]), pbw.word(k[0]), k[1])):
            c = terms[k]
            body = self.format_key(k)
            if c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            elif body == "1":
                parts.append(linalg.format_fraction(c))
            else:
                parts.append(f"{linalg.format_fraction(c)}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def format_tensor(self, terms: Mapping[tuple, Fraction]) -> str:
        if not terms:
            return "0"
        parts = []
        for k in sorted(terms, key=lambda t: tuple((pbw.degree(x[0]), pbw.word(x[0]), x[1]) for x in t)):
            c = terms[k]
            body = " (x) ".join(f"({self.format_key(x)})" for x in k)
            parts.append(body if c == 1 else f"{linalg.format_fraction(c)}*{body}")
        return " + ".join(parts)

    # -- structure maps on raw term dicts -----------------------------------
    def tau_images(self, g: int) -> list[dict]:
        memo = self._cache.setdefault("tau_images", {})
        if g not in memo:
            memo[g] = pbw.linear_letter_images(self.tau(g), self.n, self.n)
        return memo[g]

    def tau_mono(self, g: int, m: tuple) -> dict:
        """``tau_g`` extended to an algebra automorphism of ``U(L)``, on a monomial."""
        if g == 0 or not any(m):
            return {m: ONE}
        memo = self._cache.setdefault("tau_mono", {})
        key = (g, m)
        if key not in memo:
            memo[key] = pbw.apply_algebra_map(self.lie, self.tau_images(g), {m: ONE})
        return memo[key]

    def tau_u(self, g: int, u: Mapping) -> dict:
        out: dict = {}
        for m, c in u.items():
            pbw.add_into(out, self.tau_mono(g, m), c)
        return out

    def mul_keys(self, k1: Key, k2: Key) -> dict:
        memo = self._cache.setdefault("mul_keys", {})
        hit = memo.get((k1, k2))
        if hit is not None:
            return hit
        (m1, g1), (m2, g2) = k1, k2
        g = self.group.product[g1][g2]
        out: dict = {}
        for t, c in self.tau_mono(g1, m2).items():
            for m, cc in pbw.mul_mono(self.lie, m1, t).items():
                pbw.add_into(out, {(m, g): cc}, c)
        memo[(k1, k2)] = out
        return out

    def multiply(self, u: Mapping, v: Mapping) -> dict:
        out: dict = {}
        for k1, c1 in u.items():
            for k2, c2 in v.items():
                pbw.add_into(out, self.mul_keys(k1, k2), c1 * c2)
        return out

    def coproduct(self, u: Mapping) -> dict:
        out: dict = {}
        for (m, g), c in u.items():
            for left, right, b in pbw.coproduct_mono(m):
                pbw.add_into(out, {((left, g), (right, g)): c * b})
        return out

    def counit(self, u: Mapping) -> Fraction:
        return sum((c for (m, _), c in u.items() if not any(m)), ZERO)

    def antipode(self, u: Mapping) -> dict:
        """``S(m g) = tau_{g^-1}(S_U(m)) g^-1``."""
        out: dict = {}
        for (m, g), c in u.items():
            gi = self.group.inverse[g]
            su = pbw.antipode(self.lie, {m: ONE})
            for t, cc in self.tau_u(gi, su).items():
                pbw.add_into(out, {(t, gi): cc}, c)
        return out


class HopfElement:
    """A finite rational combination of basis keys of a :class:`CgkmmHopf`."""

    __slots__ = ("hopf", "terms")

    def __init__(self, hopf: CgkmmHopf, terms: Mapping[Key, Fraction]):
        self.hopf = hopf
        self.terms = {k: Fraction(v) for k, v in terms.items() if v}

    def _coerce(self, other) -> "HopfElement":
        if isinstance(other, HopfElement):
            return other
        return HopfElement(self.hopf, {(pbw.one_mono(self.hopf.n), 0): Fraction(other)})

    def __add__(self, other):
        other = self._coerce(other)
        return HopfElement(self.hopf, pbw.add_into(dict(self.terms), other.terms))

    __radd__ = __add__

    def __neg__(self):
        return HopfElement(self.hopf, pbw.scale(-1, self.terms))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, HopfElement):
            return HopfElement(self.hopf, self.hopf.multiply(self.terms, other.terms))
        return HopfElement(self.hopf, pbw.scale(linalg.frac(other), self.terms))

    def __rmul__(self, other):
        return HopfElement(self.hopf, pbw.scale(linalg.frac(other), self.terms))

    def __pow__(self, k: int):
        out = self.hopf.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, HopfElement):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max((pbw.degree(m) for m, _ in self.terms), default=-1)

    def __repr__(self):
        return f"HopfElement({self.hopf.format(self.terms)})"

    def __str__(self):
        return self.hopf.format(self.terms)


@dataclass(frozen=True)
class TensorElement:
    """An element of ``H (x) H`` (or a higher tensor power) by basis tuples."""

    hopf: CgkmmHopf
    terms: dict

    def __eq__(self, other):
        return isinstance(other, TensorElement) and self.terms == other.terms

    __hash__ = None

    def __str__(self):
        return self.hopf.format_tensor(self.terms)


def _terms(u) -> Mapping:
    return u.terms if isinstance(u, (HopfElement, TensorElement)) else u


def make_cgkmm(group: GroupTable, lie: LieAlgebra, tau: LinearRep | None = None, name: str = "") -> CgkmmHopf:
    """Validated CGKMM algebra; ``tau`` defaults to the trivial action."""
    if tau is None:
        tau = trivial_rep(group, lie.dim)
    lie.validate()
    if tau.group != group:
        raise ValidationError("the representation is over a different group")
    if tau.dimension != lie.dim:
        raise ValidationError(f"representation has dimension {tau.dimension}, Lie algebra {lie.dim}")
    tau.check()
    for g in group.elements:
        if not is_lie_automorphism(lie, tau(g)):
            raise ValidationError(
                f"tau({group.label(g)}) is not a Lie algebra automorphism", witness=(g,)
            )
    return CgkmmHopf(group, lie, tau, name)


def group_algebra(G: GroupTable, name: str = "") -> CgkmmHopf:
    return make_cgkmm(G, zero_lie(), trivial_rep(G, 0), name)


def enveloping_algebra(L: LieAlgebra, name: str = "") -> CgkmmHopf:
    G = trivial_group()
    return make_cgkmm(G, L, trivial_rep(G, L.dim), name)


def trivial_hopf() -> CgkmmHopf:
    return group_algebra(trivial_group(), "K")


def hopf_multiply(H: CgkmmHopf, u, v) -> HopfElement:
    return HopfElement(H, H.multiply(_terms(u), _terms(v)))


def hopf_coproduct(H: CgkmmHopf, u) -> TensorElement:
    return TensorElement(H, H.coproduct(_terms(u)))


def hopf_counit(H: CgkmmHopf, u) -> Fraction:
    return H.counit(_terms(u))


def hopf_antipode(H: CgkmmHopf, u) -> HopfElement:
    return HopfElement(H, H.antipode(_terms(u)))


# -- tensor helpers --------------------------------------------------------

def tensor_of(*parts: Mapping) -> dict:
    """Tensor product of term dicts (keys become tuples of basis keys)."""
    out: dict = {(): ONE}
    for p in parts:
        nxt: dict = {}
        for k, c in out.items():
            for k2, c2 in p.items():
                pbw.add_into(nxt, {k + (k2,): c * c2})
        out = nxt
    return out


def tensor_multiply(H: CgkmmHopf, s: Mapping, t: Mapping) -> dict:
    """Componentwise product in a tensor power of ``H``."""
    out: dict = {}
    for k1, c1 in s.items():
        for k2, c2 in t.items():
            acc: dict = {(): c1 * c2}
            for a, b in zip(k1, k2):
                prod = H.mul_keys(a, b)
                nxt: dict = {}
                for kk, cc in acc.items():
                    for p, cp in prod.items():
                        pbw.add_into(nxt, {kk + (p,): cc * cp})
                acc = nxt
            pbw.add_into(out, acc)
    return out


def tensor_apply(t: Mapping, leg: int, f: Callable[[Key], Mapping]) -> dict:
    """Apply a linear map (given on basis keys) to one leg of a tensor."""
    out: dict = {}
    memo: dict = {}
    for k, c in t.items():
        img = memo.get(k[leg])
        if img is None:
            img = memo[k[leg]] = f(k[leg])
        for x, cx in img.items():
            pbw.add_into(out, {k[:leg] + (x,) + k[leg + 1:]: c * cx})
    return out


def tensor_contract(t: Mapping, leg: int, f: Callable[[Key], Fraction]) -> dict:
    """Apply a linear functional to one leg and drop it."""
    out: dict = {}
    for k, c in t.items():
        v = f(k[leg])
        if v:
            pbw.add_into(out, {k[:leg] + k[leg + 1:]: c * v})
    return out


def _untuple(t: Mapping) -> dict:
    return {k[0]: c for k, c in t.items()}


# -- axiom verification ---------------------------------------------------

HOPF_AXIOMS = (
    "lie structure",
    "associativity",
    "unit",
    "coassociativity",
    "counit",
    "coproduct multiplicative",
    "counit multiplicative",
    "antipode",
    "cocommutativity",
)


def verify_hopf_axioms(H: CgkmmHopf, degree: int = 3) -> Report:
    """Check the Hopf algebra axioms exactly on all basis elements of degree ``<= degree``.

    Products are checked on pairs of total degree ``<= degree + 1`` and
    associativity on triples of total degree ``<= degree``.  Every axiom
    is checked; each failing one records its first witness.
    """
    if degree < 1:
        raise ValueError("degree bound must be at least 1")
    log = CheckLog(HOPF_AXIOMS)
    L = H.lie
    wit = _structure_constant_witness(L)
    if wit is not None:
        log.fail("lie structure", wit[1], wit[0])

    basis = H.basis(degree)
    fmt = H.format_key
    one_key = (pbw.one_mono(H.n), 0)
    deg = {k: pbw.degree(k[0]) for k in basis}

    for k in basis:
        b = {k: ONE}
        if H.mul_keys(one_key, k) != b or H.mul_keys(k, one_key) != b:
            log.fail("unit", fmt(k))
        d = H.coproduct(b)
        lhs = tensor_apply(d, 0, lambda x: H.coproduct({x: ONE}))
        rhs = tensor_apply(d, 1, lambda x: H.coproduct({x: ONE}))
        lhs = _flatten_leg(lhs, 0)
        rhs = _flatten_leg(rhs, 1)
        if lhs != rhs:
            log.fail("coassociativity", fmt(k))
        left = tensor_contract(d, 0, lambda x: H.counit({x: ONE}))
        right = tensor_contract(d, 1, lambda x: H.counit({x: ONE}))
        if _untuple(left) != b or _untuple(right) != b:
            log.fail("counit", fmt(k))
        if {(y, x): c for (x, y), c in d.items()} != d:
            log.fail("cocommutativity", fmt(k))
        eps = H.counit(b)
        target = {one_key: eps} if eps else {}
        s_left = _mult_legs(H, tensor_apply(d, 0, lambda x: H.antipode({x: ONE})))
        s_right = _mult_legs(H, tensor_apply(d, 1, lambda x: H.antipode({x: ONE})))
        if s_left != target or s_right != target:
            log.fail("antipode", fmt(k))

    for k1 in basis:
        for k2 in basis:
            if deg[k1] + deg[k2] > degree + 1:
                continue
            uv = H.mul_keys(k1, k2)
            if H.coproduct(uv) != tensor_multiply(H, H.coproduct({k1: ONE}), H.coproduct({k2: ONE})):
                log.fail("coproduct multiplicative", [fmt(k1), fmt(k2)])
            if H.counit(uv) != H.counit({k1: ONE}) * H.counit({k2: ONE}):
                log.fail("counit multiplicative", [fmt(k1), fmt(k2)])

    for k1, k2, k3 in itertools.product(basis, repeat=3):
        if deg[k1] + deg[k2] + deg[k3] > degree:
            continue
        if H.multiply(H.mul_keys(k1, k2), {k3: ONE}) != H.multiply({k1: ONE}, H.mul_keys(k2, k3)):
            log.fail("associativity", [fmt(k1), fmt(k2), fmt(k3)])
    return log.report("check-hopf", algebra=H.name, degree=degree, basis_size=len(basis))


def _flatten_leg(t: Mapping, leg: int) -> dict:
    """Replace a leg holding a pair ``(a, b)`` by the two legs ``a, b``."""
    out: dict = {}
    for k, c in t.items():
        pbw.add_into(out, {k[:leg] + k[leg] + k[leg + 1:]: c})
    return out


def _mult_legs(H: CgkmmHopf, t: Mapping) -> dict:
    out: dict = {}
    for (a, b), c in t.items():
        pbw.add_into(out, H.mul_keys(a, b), c)
    return out


def _structure_constant_witness(L: LieAlgebra):
    n = L.dim
    for i in range(n):
        for j in range(n):
            if L.brackets[i][j] != linalg.scale(-1, L.brackets[j][i]):
                return "antisymmetry fails", [L.names[i], L.names[j]]
    wit = jacobi_witness(L)
    if wit is not None:
        return "Jacobi identity fails", [L.names[i] for i in wit]
    return None


def corrupt_structure_constants(H: CgkmmHopf, i: int, j: int, k: int, delta=1) -> CgkmmHopf:
    """Test hook: add ``delta`` to the ``e_k`` coefficient of ``[e_i, e_j]`` (and keep
    antisymmetry), skipping every validation."""
    L = H.lie
    table = [list(row) for row in L.brackets]
    v = list(table[i][j])
    v[k] += Fraction(delta)
    table[i][j] = tuple(v)
    table[j][i] = linalg.scale(-1, v)
    bad = LieAlgebra(L.names, tuple(tuple(r) for r in table))
    return CgkmmHopf(H.group, bad, LinearRep(H.group, L.dim, H.tau.matrices), H.name + "~")


# -- morphisms --------------------------------------------------------------

@dataclass(frozen=True)
class HopfMorphism:
    """``alpha`` on primitives (``target.n x source.n``), ``beta`` on grouplikes."""

    source: CgkmmHopf
    target: CgkmmHopf
    alpha: linalg.Matrix
    beta: tuple[int, ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def lie_hom(self) -> LieHom:
        return LieHom(self.source.lie, self.target.lie, self.alpha)

    def alpha_of(self, v: Sequence[Fraction]) -> linalg.Vector:
        return self.lie_hom(v)

    def letter_images(self) -> list[dict]:
        if "letters" not in self._cache:
            self._cache["letters"] = pbw.linear_letter_images(self.alpha, self.source.n, self.target.n)
        return self._cache["letters"]

    def on_key(self, key: Key) -> dict:
        memo = self._cache.setdefault("keys", {})
        if key not in memo:
            m, g = key
            u = pbw.apply_algebra_map(self.target.lie, self.letter_images(), {m: ONE})
            memo[key] = {(t, self.beta[g]): c for t, c in u.items()}
        return memo[key]

    def apply(self, u: Mapping) -> dict:
        out: dict = {}
        for k, c in u.items():
            pbw.add_into(out, self.on_key(k), c)
        return out

    def __call__(self, u):
        if isinstance(u, HopfElement):
            return HopfElement(self.target, self.apply(u.terms))
        return self.apply(u)

    def compose(self, other: "HopfMorphism") -> "HopfMorphism":
        """``self o other``."""
        alpha = self.lie_hom.compose(other.lie_hom).matrix
        beta = tuple(self.beta[b] for b in other.beta)
        return HopfMorphism(other.source, self.target, alpha, beta)

    def __eq__(self, other):
        return (
            isinstance(other, HopfMorphism)
            and self.source == other.source
            and self.target == other.target
            and self.alpha == other.alpha
            and self.beta == other.beta
        )

    __hash__ = None


def _as_matrix(alpha, nrows: int, ncols: int) -> linalg.Matrix:
    if isinstance(alpha, LieHom):
        alpha = alpha.matrix
    m = linalg.matrix(alpha) if nrows else ()
    if nrows and ncols == 0 and not m:
        m = linalg.zeros(nrows, 0)
    if len(m) != nrows or any(len(r) != ncols for r in m):
        raise MorphismError(f"alpha must be a {nrows}x{ncols} matrix")
    return m


def morphism_witness(f: HopfMorphism):
    """First violated morphism condition as ``(message, witness)`` or None."""
    A, B = f.source, f.target
    if len(f.beta) != A.group.order or any(not 0 <= b < B.group.order for b in f.beta):
        return "beta is not a map between the groups", None
    wit = is_homomorphism(A.group, B.group, f.beta)
    if wit is not None:
        g, h = wit
        return f"beta is not multiplicative at ({A.group.label(g)}, {A.group.label(h)})", wit
    wit = hom_witness(f.lie_hom)
    if wit is not None:
        i, j = wit
        return f"alpha does not preserve the bracket [{A.lie.names[i]},{A.lie.names[j]}]", wit
    for g in A.group.elements:
        for i in range(A.n):
            lhs = f.alpha_of(A.tau.act(g, A.lie.unit(i)))
            rhs = B.tau.act(f.beta[g], f.alpha_of(A.lie.unit(i))) if B.n else ()
            if lhs != rhs:
                return (
                    f"equivariance fails at g={A.group.label(g)}, x={A.lie.names[i]}",
                    (A.group.label(g), A.lie.names[i]),
                )
    return None


def morphism_make(A: CgkmmHopf, B: CgkmmHopf, alpha, beta: Sequence[int]) -> HopfMorphism:
    """Validated morphism ``A -> B``."""
    f = HopfMorphism(A, B, _as_matrix(alpha, B.n, A.n), tuple(int(b) for b in beta))
    bad = morphism_witness(f)
    if bad is not None:
        raise MorphismError(bad[0], witness=bad[1])
    return f


def identity_morphism(H: CgkmmHopf) -> HopfMorphism:
    return HopfMorphism(H, H, linalg.identity(H.n), tuple(H.group.elements))


def zero_morphism(A: CgkmmHopf, B: CgkmmHopf) -> HopfMorphism:
    """The composite ``A -> K -> B`` of counit and unit."""
    return HopfMorphism(A, B, linalg.zeros(B.n, A.n), (0,) * A.group.order)


# -- sub-Hopf algebras --------------------------------------------------

@dataclass(frozen=True)
class HopfSubalgebra:
    """``U(lie) x| K[subgroup]`` inside ``ambient``."""

    ambient: CgkmmHopf
    subgroup: tuple[int, ...]
    lie: Subspace
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __eq__(self, other):
        return (
            isinstance(other, HopfSubalgebra)
            and self.ambient == other.ambient
            and self.subgroup == other.subgroup
            and self.lie == other.lie
        )

    __hash__ = None

    def group_generators(self) -> tuple[int, ...]:
        G = self.ambient.group
        gens: list[int] = []
        span = {0}
        for g in self.subgroup:
            if g not in span:
                gens.append(g)
                span = set(generated_subgroup(G, gens))
        return tuple(gens)

    def generators(self) -> list[dict]:
        """Algebra generators: the Lie basis vectors and the group generators."""
        H = self.ambient
        out = [pbw_key_terms(H, v) for v in self.lie.basis]
        out += [{(pbw.one_mono(H.n), g): ONE} for g in self.group_generators()]
        return out

    def spanning_set(self, degree: int) -> list[dict]:
        """Elements spanning the degree ``<= degree`` part."""
        memo = self._cache.setdefault("span", {})
        if degree in memo:
            return memo[degree]
        A = self.ambient
        L = A.lie
        letters = [pbw.from_vector(v) for v in self.lie.basis]
        out = []
        for m in pbw.monomials(self.lie.dim, degree):
            u = pbw.one(L.dim)
            for i, a in enumerate(m):
                for _ in range(a):
                    u = pbw.mul(L, u, letters[i])
            for g in self.subgroup:
                out.append({(t, g): c for t, c in u.items()})
        memo[degree] = out
        return out

    def echelon(self, degree: int) -> linalg.Echelon:
        memo = self._cache.setdefault("echelon", {})
        if degree not in memo:
            idx = self.ambient.index(degree)
            memo[degree] = linalg.Echelon(len(idx), [to_vector(idx, u) for u in self.spanning_set(degree)])
        return memo[degree]

    def contains(self, u) -> bool:
        u = _terms(u)
        d = max((pbw.degree(m) for m, _ in u), default=0)
        try:
            vec = to_vector(self.ambient.index(d), u)
        except KeyError:
            return False
        return self.echelon(d).contains(vec)

    def as_hopf(self) -> tuple[CgkmmHopf, HopfMorphism]:
        """This subalgebra as a CGKMM algebra with its inclusion into the ambient."""
        if "as_hopf" in self._cache:
            return self._cache["as_hopf"]
        A = self.ambient
        S = make_group_subgroup(A.group, self.subgroup)
        sub_lie, incl = restrict_subalgebra(A.lie, self.lie)
        piv = self.lie.pivots()
        mats = []
        for g in S.elements:
            cols = [tuple(A.tau.act(g, v)[p] for p in piv) for v in self.lie.basis]
            mats.append(linalg.from_columns(cols, sub_lie.dim) if sub_lie.dim else ())
        tau = LinearRep(S.table, sub_lie.dim, tuple(mats))
        H = make_cgkmm(S.table, sub_lie, tau, f"{A.name}_sub" if A.name else "")
        emb = morphism_make(H, A, incl.matrix if A.n else (), S.elements)
        self._cache["as_hopf"] = (H, emb)
        return H, emb

    def describe(self) -> dict:
        A = self.ambient
        return {
            "group": [A.group.label(g) for g in self.subgroup],
            "group_order": len(self.subgroup),
            "lie": [A.lie.format_vector(v) for v in self.lie.basis],
            "lie_dim": self.lie.dim,
        }


def pbw_key_terms(H: CgkmmHopf, v: Sequence[Fraction], g: int = 0) -> dict:
    return {(m, g): c for m, c in pbw.from_vector(v).items()}


def to_vector(index: Mapping[Hashable, int], u: Mapping) -> dict[int, Fraction]:
    return {index[k]: c for k, c in u.items()}


def make_subalgebra(A: CgkmmHopf, group_elements: Iterable[int], lie_vectors: Iterable[Sequence]) -> HopfSubalgebra:
    """Sub-Hopf algebra generated by group elements and spanned by Lie vectors.

    The group part is the generated subgroup; the Lie part must already be
    a subalgebra stable under that subgroup.
    """
    elems = tuple(generated_subgroup(A.group, list(group_elements)))
    S = Subspace.span(A.n, [linalg.vector(v) for v in lie_vectors])
    if not is_subalgebra(A.lie, S):
        raise ValidationError("Lie part is not closed under the bracket")
    for g in elems:
        for v in S.basis:
            if not S.contains(A.tau.act(g, v)):
                raise ValidationError(
                    f"Lie part is not stable under {A.group.label(g)}",
                    witness=(A.group.label(g), A.lie.format_vector(v)),
                )
    return HopfSubalgebra(A, tuple(sorted(elems)), S)


def whole(A: CgkmmHopf) -> HopfSubalgebra:
    return HopfSubalgebra(A, tuple(A.group.elements), Subspace.full(A.n))


def trivial_subalgebra(A: CgkmmHopf) -> HopfSubalgebra:
    return HopfSubalgebra(A, (0,), Subspace.zero(A.n))


def image_subalgebra(f: HopfMorphism) -> HopfSubalgebra:
    B = f.target
    return make_subalgebra(B, set(f.beta), [f.lie_hom.image_of(i) for i in range(f.source.n)])


# -- kernels ------------------------------------------------------------

def solution_space(keys: Sequence[Key], image: Callable[[Key], Mapping]) -> tuple[linalg.Vector, ...]:
    """Kernel of the linear map given on ``keys``, as echelon vectors over ``keys``."""
    rows: dict = {}
    for col, k in enumerate(keys):
        for tk, c in image(k).items():
            rows.setdefault(tk, {})[col] = c
    return linalg.Echelon(len(keys), rows.values()).nullspace()


def hopf_kernel_naive(f: HopfMorphism) -> HopfSubalgebra:
    """``(ker beta, ker alpha)`` without certification."""
    kg = tuple(g for g in f.source.group.elements if f.beta[g] == 0)
    return HopfSubalgebra(f.source, kg, f.lie_hom.kernel())


def certify_kernel(f: HopfMorphism, K: HopfSubalgebra, degree: int = 3) -> Report:
    """Two-sided check of ``f(h_1) (x) h_2 = 1 (x) h`` on the degree ``<= degree`` part."""
    A, B = f.source, f.target
    one_b = (pbw.one_mono(B.n), 0)
    log = CheckLog(["kernel elements satisfy the condition", "condition solutions lie in the kernel"])

    def defect(u: Mapping) -> dict:
        out = tensor_apply(A.coproduct(u), 0, f.on_key)
        for k, c in u.items():
            pbw.add_into(out, {(one_b, k): -c})
        return out

    for u in K.spanning_set(degree):
        if defect(u):
            log.fail("kernel elements satisfy the condition", A.format(u))
    keys = A.basis(degree)
    sols = solution_space(keys, lambda k: defect({k: ONE}))
    ech = K.echelon(degree)
    for s in sols:
        if not ech.contains(s):
            log.fail("condition solutions lie in the kernel", A.format({keys[i]: c for i, c in enumerate(s) if c}))
            break
    dims = {"solutions": len(sols), "claimed": ech.rank}
    if len(sols) != ech.rank:
        log.fail("condition solutions lie in the kernel", dims)
    return log.report("kernel", degree=degree, dimensions=dims, kernel=K.describe())


def hopf_kernel(f: HopfMorphism, degree: int = 3, certify: bool = True) -> HopfSubalgebra:
    K = hopf_kernel_naive(f)
    if certify:
        rep = certify_kernel(f, K, degree)
        if not rep.passed:
            raise CertificationError("kernel certification failed", witness=rep.payload)
    return K


# -- normality and quotients ------------------------------------------------

def normality_witness(A: CgkmmHopf, H: HopfSubalgebra):
    """First violated generator-level normality condition, or None."""
    G, L = A.group, A.lie
    ok, wit = is_normal_subgroup(G, H.subgroup)
    if not ok:
        g, h = wit
        return "group part is not normal", {"g": G.label(g), "h": G.label(h)}
    for g in G.elements:
        for v in H.lie.basis:
            if not H.lie.contains(A.tau.act(g, v)):
                return "Lie part is not stable under tau", {"g": G.label(g), "h": L.format_vector(v)}
    for i in range(A.n):
        for v in H.lie.basis:
            if not H.lie.contains(L.bracket(L.unit(i), v)):
                return "Lie part is not an ideal", {"x": L.names[i], "h": L.format_vector(v)}
    for g in H.subgroup:
        for i in range(A.n):
            w = linalg.sub(L.unit(i), A.tau.act(g, L.unit(i)))
            if not H.lie.contains(w):
                return "x - tau(h)x leaves the Lie part", {"x": L.names[i], "h": G.label(g)}
    return None


def quotient_by_normal(A: CgkmmHopf, H: HopfSubalgebra, degree: int = 3) -> tuple[CgkmmHopf, HopfMorphism]:
    bad = normality_witness(A, H)
    if bad is not None:
        raise NormalityError(bad[0], witness=bad[1])
    Q = quotient_group(A.group, H.subgroup)
    LQ = quotient_by_ideal(A.lie, H.lie)
    q = LQ.algebra.dim
    keep = H.lie.complement_indices()
    mats = []
    for coset in Q.cosets:
        rep = coset[0]
        cols = [LQ.projection(A.tau.act(rep, A.lie.unit(k))) for k in keep]
        mats.append(linalg.from_columns(cols, q) if q else ())
    tau = LinearRep(Q.table, q, tuple(mats))
    name = f"{A.name}/{H_name(H)}" if A.name else ""
    B = make_cgkmm(Q.table, LQ.algebra, tau, name)
    proj = morphism_make(A, B, LQ.projection.matrix if q else (), Q.projection)
    K = hopf_kernel(proj, degree)
    if K.subgroup != H.subgroup or K.lie != H.lie:
        raise CertificationError("kernel of the quotient map differs from the subalgebra")
    return B, proj


def H_name(H: HopfSubalgebra) -> str:
    return H._cache.get("name", "H")


# -- the canonical split sequence and the Q functor ---------------------------

@dataclass(frozen=True)
class SplitExtension:
    """``kernel --k--> total --f--> quotient`` with section ``s`` of ``f``."""

    kernel: CgkmmHopf
    total: CgkmmHopf
    quotient: CgkmmHopf
    k: HopfMorphism
    f: HopfMorphism
    s: HopfMorphism
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def action(self):
        """The induced action of the quotient on the kernel."""
        if "action" not in self._cache:
            from .action import extract_action

            self._cache["action"] = extract_action(self)
        return self._cache["action"]


def cgkmm_split_sequence(H: CgkmmHopf) -> SplitExtension:
    """``U(L) -> U(L) x| K[G] -> K[G]`` with the projection killing positive degree."""
    n = H.n
    G = H.group
    T = trivial_group()
    U = make_cgkmm(T, H.lie, trivial_rep(T, n), f"U({H.name})" if H.name else "")
    KG = group_algebra(G, f"K[{H.name}]" if H.name else "")
    k = morphism_make(U, H, linalg.identity(n), (0,))
    f = morphism_make(H, KG, (), tuple(G.elements))
    s = morphism_make(KG, H, linalg.zeros(n, 0), tuple(G.elements))
    return SplitExtension(U, H, KG, k, f, s)


def functor_Q(H: CgkmmHopf) -> LieQuotient:
    """``L`` modulo the smallest ideal containing every ``tau(g)x - x``."""
    L = H.lie
    rel = [
        linalg.sub(H.tau.act(g, L.unit(i)), L.unit(i))
        for g in H.group.elements
        for i in range(L.dim)
    ]
    return quotient_by_ideal_closure(L, rel)


def factor_through_Q(H: CgkmmHopf, q: LieQuotient, F: LieHom) -> LieHom | None:
    """The unique ``Fbar`` with ``Fbar o proj = F``, or None when ``F`` is not ``tau``-invariant."""
    L = H.lie
    for g in H.group.elements:
        for i in range(L.dim):
            if F(H.tau.act(g, L.unit(i))) != F(L.unit(i)):
                return None
    keep = q.ideal.complement_indices()
    cols = [F(L.unit(k)) for k in keep]
    mat = linalg.from_columns(cols, F.target.dim) if F.target.dim else ()
    Fbar = LieHom(q.algebra, F.target, mat)
    if Fbar.compose(q.projection).matrix != F.matrix:
        raise CertificationError("factorisation through Q does not reproduce F")
    if hom_witness(Fbar) is not None:
        raise CertificationError("factor map is not a Lie morphism")
    return Fbar


def adjunction_check(H: CgkmmHopf, target_group: GroupTable, degree: int = 2) -> Report:
    """Every morphism ``H -> K[G']`` factors uniquely through ``p_H: H -> K[G_H]``."""
    seq = cgkmm_split_sequence(H)
    KG2 = group_algebra(target_group)
    log = CheckLog(["factorisation", "uniqueness"])
    homs = group_homomorphisms(H.group, target_group)
    for beta in homs:
        f = morphism_make(H, KG2, (), beta)
        fbar = morphism_make(seq.quotient, KG2, (), beta)
        for k in H.basis(degree):
            if fbar.apply(seq.f.on_key(k)) != f.on_key(k):
                log.fail("factorisation", {"beta": list(beta), "element": H.format_key(k)})
                break
        # another factor map must agree on grouplikes, which p_H hits surjectively
        for other in homs:
            if other != beta and all(seq.f.beta[g] == g for g in H.group.elements):
                hits = all(other[seq.f.beta[g]] == f.beta[g] for g in H.group.elements)
                log.check("uniqueness", not hits, {"beta": list(beta), "other": list(other)})
    return log.report("adjunction", morphisms=len(homs))
