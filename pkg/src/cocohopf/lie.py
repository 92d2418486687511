"""Finite-dimensional Lie algebras over Q given by structure constants.

``brackets[i][j]`` is the coordinate vector of ``[e_i, e_j]``.  The abstract
bracket only meets an associative product in :mod:`cocohopf.pbw`; see the
orientation note there.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg
from .errors import LieAlgebraError, MorphismError
from .linalg import Matrix, Vector


@dataclass(frozen=True)
class LieAlgebra:
    names: tuple[str, ...]
    brackets: tuple[tuple[Vector, ...], ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def dim(self) -> int:
        return len(self.names)

    def bracket_basis(self, i: int, j: int) -> Vector:
        return self.brackets[i][j]

    def bracket(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
        n = self.dim
        out = [linalg.ZERO] * n
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                c = a * b
                for k, x in enumerate(self.brackets[i][j]):
                    if x:
                        out[k] += c * x
        return tuple(out)

    def unit(self, i: int) -> Vector:
        return linalg.unit_vector(self.dim, i)

    def zero(self) -> Vector:
        return linalg.zero_vector(self.dim)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise LieAlgebraError(f"unknown basis element {name!r}") from None

    def is_abelian(self) -> bool:
        return all(linalg.is_zero(v) for row in self.brackets for v in row)

    def ad(self, u: Sequence[Fraction]) -> Matrix:
        """Matrix of ``v -> [u, v]``."""
        cols = [self.bracket(u, self.unit(j)) for j in range(self.dim)]
        return linalg.from_columns(cols, self.dim)

    def format_vector(self, v: Sequence[Fraction]) -> str:
        return format_combination(self.names, v)

    def validate(self) -> None:
        n = self.dim
        if len(set(self.names)) != n:
            raise LieAlgebraError("basis names must be distinct")
        for i in range(n):
            for j in range(n):
                if len(self.brackets[i][j]) != n:
                    raise LieAlgebraError(f"bracket ({i}, {j}) has wrong length")
                neg = linalg.scale(-1, self.brackets[j][i])
                if self.brackets[i][j] != neg:
                    k = next(k for k in range(n) if self.brackets[i][j][k] != neg[k])
                    raise LieAlgebraError(
                        f"antisymmetry fails: [{self.names[i]},{self.names[j]}] != -[{self.names[j]},{self.names[i]}]",
                        witness=(i, j, k),
                    )
        wit = jacobi_witness(self)
        if wit is not None:
            i, j, k = wit
            raise LieAlgebraError(
                f"Jacobi identity fails on ({self.names[i]}, {self.names[j]}, {self.names[k]})",
                witness=wit,
            )


def format_combination(names: Sequence[str], v: Sequence[Fraction]) -> str:
    terms = []
    for name, c in zip(names, v):
        if not c:
            continue
        if c == 1:
            terms.append(f"+ {name}")
        elif c == -1:
            terms.append(f"- {name}")
        elif c < 0:
            terms.append(f"- {linalg.format_fraction(-c)}*{name}")
        else:
            terms.append(f"+ {linalg.format_fraction(c)}*{name}")
    if not terms:
        return "0"
    s = " ".join(terms)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


def jacobi_witness(L: LieAlgebra) -> tuple[int, int, int] | None:
    n = L.dim
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                ei, ej, ek = L.unit(i), L.unit(j), L.unit(k)
                total = linalg.add(
                    linalg.add(L.bracket(ei, L.bracket(ej, ek)), L.bracket(ej, L.bracket(ek, ei))),
                    L.bracket(ek, L.bracket(ei, ej)),
                )
                if not linalg.is_zero(total):
                    return (i, j, k)
    return None


def lie_from_structure_constants(names: Sequence[str], constants) -> LieAlgebra:
    """Build and validate a Lie algebra.

    ``constants`` is either a full ``n x n`` table of bracket vectors or a
    mapping ``{(a, b): {c: value}}`` keyed by names or indices.  Pairs absent
    from a mapping are filled by antisymmetry (or zero).
    """
    names = tuple(str(n) for n in names)
    n = len(names)

    def idx(a) -> int:
        if isinstance(a, int):
            if not 0 <= a < n:
                raise LieAlgebraError(f"basis index {a} out of range")
            return a
        if a not in names:
            raise LieAlgebraError(f"unknown basis element {a!r}")
        return names.index(a)

    if isinstance(constants, Mapping):
        given: dict[tuple[int, int], Vector] = {}
        for (a, b), val in constants.items():
            i, j = idx(a), idx(b)
            if isinstance(val, Mapping):
                vec = [linalg.ZERO] * n
                for c, x in val.items():
                    vec[idx(c)] += linalg.frac(x)
                vec = tuple(vec)
            else:
                vec = linalg.vector(val)
            given[(i, j)] = vec
        table = [[linalg.zero_vector(n) for _ in range(n)] for _ in range(n)]
        for (i, j), vec in given.items():
            if i == j and not linalg.is_zero(vec):
                k = next(k for k in range(n) if vec[k])
                raise LieAlgebraError(f"[{names[i]},{names[i]}] must vanish", witness=(i, i, k))
            if (j, i) in given and given[(j, i)] != linalg.scale(-1, vec):
                k = next(k for k in range(n) if given[(j, i)][k] != -vec[k])
                raise LieAlgebraError(
                    f"antisymmetry fails: [{names[i]},{names[j]}] != -[{names[j]},{names[i]}]",
                    witness=(i, j, k),
                )
            table[i][j] = vec
            table[j][i] = linalg.scale(-1, vec)
        brackets = tuple(tuple(r) for r in table)
    else:
        brackets = tuple(tuple(linalg.vector(v) for v in row) for row in constants)
        if len(brackets) != n or any(len(r) != n for r in brackets):
            raise LieAlgebraError("structure constant table has the wrong shape")
    L = LieAlgebra(names, brackets)
    L.validate()
    return L


def abelian_lie(names: Sequence[str] | int) -> LieAlgebra:
    if isinstance(names, int):
        names = [f"e{i + 1}" for i in range(names)]
    return lie_from_structure_constants(names, {})


def zero_lie() -> LieAlgebra:
    return abelian_lie(())


def heisenberg() -> LieAlgebra:
    return lie_from_structure_constants(["x", "y", "z"], {("x", "y"): {"z": 1}})


@dataclass(frozen=True)
class Subspace:
    """Subspace of ``Q^ambient_dim`` in reduced echelon form."""

    ambient_dim: int
    basis: tuple[Vector, ...]

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        return cls(ambient_dim, linalg.rref([linalg.vector(v) for v in vectors], ambient_dim))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, linalg.identity(n))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[Fraction]) -> bool:
        return linalg.Echelon(self.ambient_dim, self.basis).contains(v)

    def contains_space(self, other: "Subspace") -> bool:
        ech = linalg.Echelon(self.ambient_dim, self.basis)
        return all(ech.contains(v) for v in other.basis)

    def reduce(self, v: Sequence[Fraction]) -> Vector:
        r = linalg.Echelon(self.ambient_dim, self.basis).reduce(v)
        return tuple(r.get(k, linalg.ZERO) for k in range(self.ambient_dim))

    def pivots(self) -> tuple[int, ...]:
        return tuple(next(k for k, x in enumerate(v) if x) for v in self.basis)

    def complement_indices(self) -> tuple[int, ...]:
        piv = set(self.pivots())
        return tuple(k for k in range(self.ambient_dim) if k not in piv)

    def coordinates(self, v: Sequence[Fraction]) -> Vector | None:
        """Coefficients of ``v`` in :attr:`basis`, or None if outside."""
        if not self.contains(v):
            return None
        return tuple(v[p] for p in self.pivots())

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.ambient_dim, self.basis + other.basis)

    def intersect(self, other: "Subspace") -> "Subspace":
        # x = sum a_i u_i = sum b_j v_j
        n = self.ambient_dim
        cols = list(self.basis) + [linalg.scale(-1, v) for v in other.basis]
        rows = [[c[r] for c in cols] for r in range(n)]
        out = []
        for sol in linalg.nullspace(rows, len(cols)):
            vec = linalg.zero_vector(n)
            for a, u in zip(sol, self.basis):
                vec = linalg.add(vec, linalg.scale(a, u))
            out.append(vec)
        return Subspace.span(n, out)


def _lin_map(m: Matrix, v: Sequence[Fraction], nrows: int) -> Vector:
    return linalg.mat_vec(m, v) if nrows else ()


@dataclass(frozen=True)
class LieHom:
    """Lie algebra map; ``matrix`` has ``target.dim`` rows, columns are images."""

    source: LieAlgebra
    target: LieAlgebra
    matrix: Matrix

    def __call__(self, v: Sequence[Fraction]) -> Vector:
        return _lin_map(self.matrix, v, self.target.dim)

    def image_of(self, i: int) -> Vector:
        return tuple(row[i] for row in self.matrix) if self.target.dim else ()

    def kernel(self) -> Subspace:
        return Subspace(self.source.dim, linalg.nullspace(self.matrix, self.source.dim))

    def image(self) -> Subspace:
        return Subspace.span(self.target.dim, [self.image_of(i) for i in range(self.source.dim)])

    def compose(self, other: "LieHom") -> "LieHom":
        """``self o other``."""
        return LieHom(other.source, self.target, matmul(self.matrix, other.matrix, self.target.dim, other.source.dim))


def matmul(a: Matrix, b: Matrix, nrows: int, ncols: int) -> Matrix:
    if nrows == 0:
        return ()
    if not b:
        return linalg.zeros(nrows, ncols)
    return linalg.mat_mul(a, b)


def shape_ok(m: Matrix, nrows: int, ncols: int) -> bool:
    return len(m) == nrows and all(len(r) == ncols for r in m)


def lie_hom(source: LieAlgebra, target: LieAlgebra, matrix: Sequence[Sequence]) -> LieHom:
    """Validated Lie algebra homomorphism."""
    m = linalg.matrix(matrix)
    if not shape_ok(m, target.dim, source.dim):
        raise MorphismError(f"matrix must be {target.dim}x{source.dim}")
    f = LieHom(source, target, m)
    wit = hom_witness(f)
    if wit is not None:
        i, j = wit
        raise MorphismError(
            f"map does not preserve the bracket [{source.names[i]},{source.names[j]}]", witness=wit
        )
    return f


def hom_witness(f: LieHom) -> tuple[int, int] | None:
    S = f.source
    for i in range(S.dim):
        for j in range(i + 1, S.dim):
            lhs = f(S.brackets[i][j])
            rhs = f.target.bracket(f.image_of(i), f.image_of(j))
            if lhs != rhs:
                return (i, j)
    return None


def identity_hom(L: LieAlgebra) -> LieHom:
    return LieHom(L, L, linalg.identity(L.dim))


def zero_hom(S: LieAlgebra, T: LieAlgebra) -> LieHom:
    return LieHom(S, T, linalg.zeros(T.dim, S.dim))


def is_derivation(L: LieAlgebra, D: Matrix) -> bool:
    n = L.dim
    for i in range(n):
        for j in range(i + 1, n):
            lhs = _lin_map(D, L.brackets[i][j], n)
            rhs = linalg.add(
                L.bracket(linalg.column(D, i), L.unit(j)), L.bracket(L.unit(i), linalg.column(D, j))
            )
            if lhs != rhs:
                return False
    return True


def is_lie_automorphism(L: LieAlgebra, A: Matrix) -> bool:
    if L.dim == 0:
        return True
    if linalg.inverse(A) is None:
        return False
    return hom_witness(LieHom(L, L, A)) is None


def lie_derivations(L: LieAlgebra) -> list[Matrix]:
    """Reduced echelon basis of ``Der(L)``; matrices flattened row major."""
    n = L.dim
    ech = linalg.Echelon(n * n)
    # unknown D[r][c] sits at column r*n + c; D e_c = sum_r D[r][c] e_r
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                row: dict[int, Fraction] = {}

                def put(col, val):
                    row[col] = row.get(col, linalg.ZERO) + val

                # D[e_i, e_j]_k
                for m, c in enumerate(L.brackets[i][j]):
                    if c:
                        put(k * n + m, c)
                # - [D e_i, e_j]_k - [e_i, D e_j]_k
                for m in range(n):
                    c1 = L.brackets[m][j][k]
                    if c1:
                        put(m * n + i, -c1)
                    c2 = L.brackets[i][m][k]
                    if c2:
                        put(m * n + j, -c2)
                ech.add({a: b for a, b in row.items() if b})
    return [tuple(tuple(v[r * n:(r + 1) * n]) for r in range(n)) for v in ech.nullspace()]


def lie_centralizer(L: LieAlgebra, S: Subspace) -> Subspace:
    """``{x : [x, s] = 0 for all s in S}``."""
    n = L.dim
    rows = []
    for s in S.basis:
        # column j of -ad(s) is [e_j, s]
        m = linalg.from_columns([L.bracket(L.unit(j), s) for j in range(n)], n)
        rows.extend(m)
    return Subspace(n, linalg.nullspace(rows, n))


def lie_center(L: LieAlgebra) -> Subspace:
    return lie_centralizer(L, Subspace.full(L.dim))


def derived_algebra(L: LieAlgebra) -> Subspace:
    return Subspace.span(L.dim, [L.brackets[i][j] for i in range(L.dim) for j in range(L.dim)])


def is_subalgebra(L: LieAlgebra, S: Subspace) -> bool:
    return all(S.contains(L.bracket(u, v)) for u in S.basis for v in S.basis)


def is_ideal(L: LieAlgebra, S: Subspace) -> bool:
    return all(S.contains(L.bracket(L.unit(i), v)) for i in range(L.dim) for v in S.basis)


def ideal_closure(L: LieAlgebra, vectors: Iterable[Sequence]) -> Subspace:
    """Smallest ideal containing ``vectors``; iterates ``[L, I]`` to a fixed point."""
    n = L.dim
    current = Subspace.span(n, vectors)
    while True:
        new = [L.bracket(L.unit(i), v) for i in range(n) for v in current.basis]
        nxt = Subspace.span(n, current.basis + tuple(new))
        if nxt.dim == current.dim:
            return current
        current = nxt


def semidirect_lie(M: LieAlgebra, L: LieAlgebra, nu: Sequence[Sequence[Sequence]]) -> LieAlgebra:
    """``M x| L`` on ``M + L`` with ``[(m1,l1),(m2,l2)] = ([m1,m2] + nu(l1)m2 - nu(l2)m1, [l1,l2])``.

    ``nu[i]`` is the derivation of ``M`` (a matrix) assigned to ``L``'s basis
    element ``i``; ``nu`` must be a Lie morphism into ``Der(M)`` for the
    commutator ``AB - BA``.
    """
    m, l = M.dim, L.dim
    nu = [linalg.matrix(x) if m else () for x in nu]
    if len(nu) != l:
        raise LieAlgebraError("nu needs one matrix per basis element of L")
    for i, D in enumerate(nu):
        if m and not shape_ok(D, m, m):
            raise LieAlgebraError(f"nu({L.names[i]}) must be {m}x{m}")
        if m and not is_derivation(M, D):
            raise LieAlgebraError(f"nu({L.names[i]}) is not a derivation of M", witness=(i,))

    def nu_of(v):
        out = linalg.zeros(m, m)
        for c, D in zip(v, nu):
            if c:
                out = linalg.mat_add(out, linalg.mat_scale(c, D))
        return out

    for i in range(l):
        for j in range(i + 1, l):
            lhs = nu_of(L.brackets[i][j])
            rhs = linalg.mat_sub(matmul(nu[i], nu[j], m, m), matmul(nu[j], nu[i], m, m)) if m else ()
            if m and lhs != rhs:
                raise LieAlgebraError(
                    f"nu is not a Lie morphism on ({L.names[i]}, {L.names[j]})", witness=(i, j)
                )
    n = m + l
    names = M.names + L.names
    if len(set(names)) != n:
        names = tuple(f"{a}_M" for a in M.names) + tuple(f"{a}_L" for a in L.names)
    table = [[linalg.zero_vector(n) for _ in range(n)] for _ in range(n)]
    for i in range(m):
        for j in range(m):
            table[i][j] = M.brackets[i][j] + linalg.zero_vector(l)
    for a in range(l):
        for b in range(l):
            table[m + a][m + b] = linalg.zero_vector(m) + L.brackets[a][b]
        for j in range(m):
            # [l_a, m_j] = nu(l_a) m_j
            v = linalg.column(nu[a], j) + linalg.zero_vector(l)
            table[m + a][j] = v
            table[j][m + a] = linalg.scale(-1, v)
    out = LieAlgebra(names, tuple(tuple(r) for r in table))
    out.validate()
    return out


def direct_sum(M: LieAlgebra, L: LieAlgebra) -> LieAlgebra:
    return semidirect_lie(M, L, [linalg.zeros(M.dim, M.dim)] * L.dim)


@dataclass(frozen=True)
class LieQuotient:
    algebra: LieAlgebra
    projection: LieHom
    ideal: Subspace


def quotient_by_ideal(L: LieAlgebra, ideal: Subspace) -> LieQuotient:
    """``L/I`` for an ideal ``I``; the basis is the non-pivot coordinate vectors."""
    if not is_ideal(L, ideal):
        raise LieAlgebraError("subspace is not an ideal")
    keep = ideal.complement_indices()
    names = tuple(L.names[k] for k in keep)

    def project(v):
        r = ideal.reduce(v)
        return tuple(r[k] for k in keep)

    q = len(keep)
    proj = linalg.from_columns([project(L.unit(j)) for j in range(L.dim)], q)
    table = tuple(
        tuple(project(L.brackets[a][b]) for b in keep) for a in keep
    )
    Q = LieAlgebra(names, table)
    Q.validate()
    return LieQuotient(Q, LieHom(L, Q, proj), ideal)


def quotient_by_ideal_closure(L: LieAlgebra, S: Iterable[Sequence]) -> LieQuotient:
    return quotient_by_ideal(L, ideal_closure(L, S))


def restrict_subalgebra(L: LieAlgebra, S: Subspace) -> tuple[LieAlgebra, LieHom]:
    """``S`` as a Lie algebra in the basis ``S.basis``, with its inclusion."""
    if not is_subalgebra(L, S):
        raise LieAlgebraError("subspace is not closed under the bracket")
    k = S.dim
    names = tuple(f"s{i + 1}" for i in range(k))
    piv = S.pivots()
    table = tuple(
        tuple(tuple(L.bracket(u, v)[p] for p in piv) for v in S.basis) for u in S.basis
    )
    sub = LieAlgebra(names, table)
    sub.validate()
    return sub, LieHom(sub, L, linalg.from_columns(list(S.basis), L.dim))
