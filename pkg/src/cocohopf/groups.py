"""Finite groups as dense Cayley tables.

Elements are the labels ``0..order-1`` with ``0`` the identity.  Permutation
input is only a constructor: :func:`group_from_generators` closes a set of
permutations breadth first and keeps the permutations as element
representatives.  Permutations compose left to right, ``(p*q)(i) = q(p(i))``,
matching the usual cycle-notation convention.
"""
from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .errors import (
    AutomorphismEnumerationInfeasible,
    GroupError,
    ValidationError,
)

Permutation = tuple  # images of 0..n-1

DEFAULT_CLOSURE_BOUND = 10**6
DEFAULT_AUTOMORPHISM_BOUND = 512
_EXHAUSTIVE_ASSOCIATIVITY = 64


def perm_from_cycles(degree: int, cycles: Iterable[Sequence[int]]) -> Permutation:
    """Permutation of ``{0..degree-1}`` from 1-based cycles."""
    img = list(range(degree))
    seen: set[int] = set()
    for cyc in cycles:
        cyc = [int(c) - 1 for c in cyc]
        for c in cyc:
            if not 0 <= c < degree:
                raise GroupError(f"cycle entry {c + 1} outside 1..{degree}")
            if c in seen:
                raise GroupError(f"point {c + 1} appears twice in the cycles")
            seen.add(c)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a] = b
    return tuple(img)


def perm_to_cycles(p: Permutation) -> list[tuple[int, ...]]:
    """Nontrivial 1-based cycles of a permutation, smallest point first."""
    out = []
    seen = set()
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        out.append(tuple(c + 1 for c in cyc))
    return out


def format_perm(p: Permutation) -> str:
    cycles = perm_to_cycles(p)
    if not cycles:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def _compose(p: Permutation, q: Permutation) -> Permutation:
    return tuple(q[i] for i in p)


@dataclass(frozen=True)
class GroupTable:
    """A finite group given by its full multiplication table."""

    product: tuple[tuple[int, ...], ...]
    inverse: tuple[int, ...]
    generators: tuple[int, ...] = ()
    perms: tuple[Permutation, ...] | None = field(default=None, compare=False, repr=False)

    @property
    def order(self) -> int:
        return len(self.product)

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.product[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, g: int, h: int) -> int:
        """``g h g^-1``."""
        return self.product[self.product[g][h]][self.inverse[g]]

    def power(self, a: int, n: int) -> int:
        r = 0
        for _ in range(n):
            r = self.product[r][a]
        return r

    def element_order(self, a: int) -> int:
        n, r = 1, a
        while r != 0:
            r = self.product[r][a]
            n += 1
        return n

    def is_abelian(self) -> bool:
        p = self.product
        return all(p[a][b] == p[b][a] for a in self.elements for b in self.elements)

    def label(self, a: int) -> str:
        if self.perms is not None:
            return format_perm(self.perms[a])
        return f"g{a}"

    def find_perm(self, p: Permutation) -> int:
        if self.perms is None:
            raise GroupError("group has no permutation representatives")
        try:
            return self.perms.index(tuple(p))
        except ValueError:
            raise GroupError(f"permutation {format_perm(p)} is not in the group") from None

    def generating_set(self) -> tuple[int, ...]:
        """Stored generators if any, else a greedy small generating set."""
        if self.generators and len(generated_subgroup(self, self.generators)) == self.order:
            return tuple(g for g in self.generators if g != 0) or ()
        return small_generating_set(self)

    def words(self, gens: Sequence[int] | None = None) -> list[tuple[int, int] | None]:
        """Breadth-first spanning tree: ``parent[x] = (y, s)`` with ``x = y*s``."""
        gens = self.generating_set() if gens is None else tuple(gens)
        parent: list[tuple[int, int] | None] = [None] * self.order
        seen = [False] * self.order
        seen[0] = True
        queue = deque([0])
        while queue:
            y = queue.popleft()
            for s in gens:
                x = self.product[y][s]
                if not seen[x]:
                    seen[x] = True
                    parent[x] = (y, s)
                    queue.append(x)
        if not all(seen):
            raise GroupError("given elements do not generate the group")
        return parent

    def check(self) -> None:
        """Validate identity, inverses and associativity (sampled above 64)."""
        n = self.order
        p = self.product
        if n == 0:
            raise GroupError("empty group")
        for a in range(n):
            if len(p[a]) != n or sorted(p[a]) != list(range(n)):
                raise GroupError(f"row {a} of the table is not a permutation")
            if p[0][a] != a or p[a][0] != a:
                raise GroupError(f"0 is not an identity for element {a}")
            if p[a][self.inverse[a]] != 0 or p[self.inverse[a]][a] != 0:
                raise GroupError(f"inverse table wrong at {a}")
        if n <= _EXHAUSTIVE_ASSOCIATIVITY:
            triples = itertools.product(range(n), repeat=3)
        else:
            rng = random.Random(n)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(20000))
        for a, b, c in triples:
            if p[p[a][b]][c] != p[a][p[b][c]]:
                raise GroupError(f"associativity fails at ({a}, {b}, {c})")


def group_from_table(product: Sequence[Sequence[int]], generators: Sequence[int] = ()) -> GroupTable:
    product = tuple(tuple(int(x) for x in row) for row in product)
    inverse = []
    for a in range(len(product)):
        inv = [b for b in range(len(product)) if product[a][b] == 0]
        if len(inv) != 1:
            raise GroupError(f"element {a} has no unique inverse")
        inverse.append(inv[0])
    g = GroupTable(product, tuple(inverse), tuple(generators))
    g.check()
    return g


def group_from_generators(
    degree: int,
    generators: Sequence[Permutation],
    bound: int = DEFAULT_CLOSURE_BOUND,
) -> GroupTable:
    """Close permutations of ``{0..degree-1}`` under composition.

    Labels are assigned breadth first from the identity, trying the
    generators in input order.
    """
    if degree < 1:
        raise GroupError("degree must be positive")
    gens = []
    for g in generators:
        g = tuple(int(x) for x in g)
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise GroupError(f"{g} is not a permutation of {degree} points")
        gens.append(g)
    ident = tuple(range(degree))
    perms = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = _compose(p, g)
            if q not in index:
                if len(perms) >= bound:
                    raise GroupError(f"closure exceeds the size bound {bound}")
                index[q] = len(perms)
                perms.append(q)
                queue.append(q)
    n = len(perms)
    product = tuple(tuple(index[_compose(a, b)] for b in perms) for a in perms)
    inverse = []
    for a in perms:
        inv = [0] * degree
        for i, j in enumerate(a):
            inv[j] = i
        inverse.append(index[tuple(inv)])
    table = GroupTable(product, tuple(inverse), tuple(index[g] for g in gens), tuple(perms))
    if n <= _EXHAUSTIVE_ASSOCIATIVITY:
        table.check()
    return table


def trivial_group() -> GroupTable:
    return group_from_generators(1, [])


def cyclic_group(n: int) -> GroupTable:
    if n == 1:
        return trivial_group()
    return group_from_generators(n, [tuple((i + 1) % n for i in range(n))])


def symmetric_group(n: int) -> GroupTable:
    gens = []
    if n >= 2:
        gens.append(tuple((i + 1) % n for i in range(n)))
        gens.append((1, 0) + tuple(range(2, n)))
    return group_from_generators(n, gens)


def generated_subgroup(G: GroupTable, elems: Iterable[int]) -> list[int]:
    """Sorted labels of the subgroup generated by ``elems``."""
    elems = list(elems)
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for s in elems:
            y = G.product[x][s]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return sorted(seen)


def small_generating_set(G: GroupTable) -> tuple[int, ...]:
    """Greedy generating set, preferring elements of large order."""
    if G.order == 1:
        return ()
    candidates = sorted(G.elements, key=lambda a: (-G.element_order(a), a))
    gens: list[int] = []
    current = {0}
    for a in candidates:
        if a in current:
            continue
        gens.append(a)
        current = set(generated_subgroup(G, gens))
        if len(current) == G.order:
            break
    # drop redundant generators
    for a in list(gens):
        rest = [b for b in gens if b != a]
        if len(generated_subgroup(G, rest)) == G.order:
            gens = rest
    return tuple(gens)


def is_subgroup(G: GroupTable, elems: Iterable[int]) -> bool:
    s = set(elems)
    if 0 not in s:
        return False
    return all(G.product[a][G.inverse[b]] in s for a in s for b in s)


def is_normal_subgroup(G: GroupTable, elems: Iterable[int]) -> tuple[bool, tuple[int, int] | None]:
    """Normality test with a witness ``(g, n)`` whose conjugate leaves the subgroup."""
    s = set(elems)
    for g in G.elements:
        for n in sorted(s):
            if G.conj(g, n) not in s:
                return False, (g, n)
    return True, None


@dataclass(frozen=True)
class Subgroup:
    """A subgroup as its own table together with the embedding into the ambient."""

    ambient: GroupTable
    elements: tuple[int, ...]
    table: GroupTable

    @property
    def order(self) -> int:
        return len(self.elements)

    def embed(self, a: int) -> int:
        return self.elements[a]

    def local(self, g: int) -> int:
        return self.elements.index(g)


def subgroup(G: GroupTable, elems: Iterable[int]) -> Subgroup:
    elems = tuple(sorted(set(elems)))
    if not is_subgroup(G, elems):
        raise GroupError(f"{list(elems)} is not a subgroup")
    pos = {g: i for i, g in enumerate(elems)}
    product = tuple(tuple(pos[G.product[a][b]] for b in elems) for a in elems)
    inverse = tuple(pos[G.inverse[a]] for a in elems)
    perms = None if G.perms is None else tuple(G.perms[a] for a in elems)
    return Subgroup(G, elems, GroupTable(product, inverse, (), perms))


def group_centralizer(G: GroupTable, S: Iterable[int]) -> Subgroup:
    """``{g : g s = s g for all s in S}``."""
    S = list(S)
    elems = [g for g in G.elements if all(G.product[g][s] == G.product[s][g] for s in S)]
    return subgroup(G, elems)


def group_center(G: GroupTable) -> Subgroup:
    return group_centralizer(G, G.elements)


@dataclass(frozen=True)
class QuotientGroup:
    table: GroupTable
    cosets: tuple[tuple[int, ...], ...]
    projection: tuple[int, ...]


def quotient_group(G: GroupTable, N: Iterable[int]) -> QuotientGroup:
    """``G/N`` with cosets labelled by their smallest representative."""
    N = sorted(set(N))
    ok, wit = is_normal_subgroup(G, N)
    if not ok:
        raise GroupError(f"subgroup is not normal: conjugating {wit[1]} by {wit[0]} leaves it")
    proj = [-1] * G.order
    cosets = []
    for g in G.elements:
        if proj[g] >= 0:
            continue
        coset = tuple(sorted(G.product[g][n] for n in N))
        for c in coset:
            proj[c] = len(cosets)
        cosets.append(coset)
    reps = [c[0] for c in cosets]
    product = tuple(tuple(proj[G.product[a][b]] for b in reps) for a in reps)
    inverse = tuple(proj[G.inverse[a]] for a in reps)
    gens = tuple(sorted({proj[g] for g in G.generators} - {0}))
    return QuotientGroup(GroupTable(product, inverse, gens), tuple(cosets), tuple(proj))


def extend_homomorphism(
    G: GroupTable, H: GroupTable, gens: Sequence[int], images: Sequence[int]
) -> tuple[int, ...] | None:
    """Extend ``gens[i] -> images[i]`` to a homomorphism ``G -> H`` or return None."""
    f = [-1] * G.order
    f[0] = 0
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for s, t in zip(gens, images):
            y = G.product[x][s]
            fy = H.product[f[x]][t]
            if f[y] < 0:
                f[y] = fy
                queue.append(y)
            elif f[y] != fy:
                return None
    if min(f) < 0:
        raise GroupError("given elements do not generate the group")
    return tuple(f)


def is_homomorphism(G: GroupTable, H: GroupTable, f: Sequence[int]) -> tuple[int, int] | None:
    """Witness pair violating ``f(ab) = f(a)f(b)``, or None."""
    for a in G.elements:
        for b in G.elements:
            if f[G.product[a][b]] != H.product[f[a]][f[b]]:
                return (a, b)
    return None


def group_homomorphisms(G: GroupTable, H: GroupTable) -> list[tuple[int, ...]]:
    """All homomorphisms ``G -> H`` (brute force over generator images)."""
    gens = G.generating_set()
    orders = [G.element_order(g) for g in gens]
    choices = [[h for h in H.elements if orders[i] % H.element_order(h) == 0] for i in range(len(gens))]
    out = set()
    for imgs in itertools.product(*choices):
        f = extend_homomorphism(G, H, gens, imgs)
        if f is not None:
            out.add(f)
    return sorted(out)


def enumerate_automorphisms(G: GroupTable, bound: int = DEFAULT_AUTOMORPHISM_BOUND) -> list[tuple[int, ...]]:
    """All automorphisms of ``G`` as label permutations, sorted, identity first."""
    if G.order > bound:
        raise AutomorphismEnumerationInfeasible(
            f"enumeration infeasible: |G| = {G.order} exceeds the bound {bound}"
        )
    gens = small_generating_set(G)
    orders = [G.element_order(g) for g in gens]
    choices = [[h for h in G.elements if G.element_order(h) == o] for o in orders]
    out = []
    for imgs in itertools.product(*choices):
        f = extend_homomorphism(G, G, gens, imgs)
        if f is not None and len(set(f)) == G.order:
            out.append(f)
    return sorted(out)


def find_isomorphism(G: GroupTable, H: GroupTable) -> tuple[int, ...] | None:
    """An isomorphism ``G -> H`` as a label map, or None."""
    if G.order != H.order:
        return None
    if sorted(G.element_order(g) for g in G.elements) != sorted(H.element_order(h) for h in H.elements):
        return None
    gens = small_generating_set(G)
    choices = [[h for h in H.elements if H.element_order(h) == G.element_order(g)] for g in gens]
    for imgs in itertools.product(*choices):
        f = extend_homomorphism(G, H, gens, imgs)
        if f is not None and len(set(f)) == H.order:
            return f
    return None


def compose_maps(f: Sequence[int], g: Sequence[int]) -> tuple[int, ...]:
    """``f o g`` for label maps."""
    return tuple(f[x] for x in g)


def invert_map(f: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(f)
    for i, j in enumerate(f):
        inv[j] = i
    return tuple(inv)


def semidirect_group(N: GroupTable, M: GroupTable, tau: Sequence[Sequence[int]]) -> GroupTable:
    """``N x| M`` on pairs ``(n, m)`` labelled ``m*|N| + n``.

    ``tau[m]`` is the automorphism of ``N`` (a label permutation) by which
    ``m`` acts; the product is ``(n1, m1)(n2, m2) = (n1 tau(m1)(n2), m1 m2)``.
    """
    tau = [tuple(t) for t in tau]
    if len(tau) != M.order:
        raise ValidationError("tau must give one automorphism per element of M")
    for m, t in enumerate(tau):
        if sorted(t) != list(N.elements):
            raise ValidationError(f"tau({m}) is not a bijection of N", witness=(m,))
        wit = is_homomorphism(N, N, t)
        if wit is not None:
            raise ValidationError(f"tau({m}) is not multiplicative on N", witness=(m,) + wit)
    for a in M.elements:
        for b in M.elements:
            if tau[M.product[a][b]] != compose_maps(tau[a], tau[b]):
                raise ValidationError(
                    f"tau is not multiplicative at the pair ({a}, {b})", witness=(a, b)
                )
    n = N.order

    def lab(x: int, m: int) -> int:
        return m * n + x

    order = n * M.order
    product = [[0] * order for _ in range(order)]
    inverse = [0] * order
    for m1 in M.elements:
        for x1 in N.elements:
            for m2 in M.elements:
                t = tau[m1]
                for x2 in N.elements:
                    product[lab(x1, m1)][lab(x2, m2)] = lab(N.product[x1][t[x2]], M.product[m1][m2])
            mi = M.inverse[m1]
            inverse[lab(x1, m1)] = lab(tau[mi][N.inverse[x1]], mi)
    gens = tuple(sorted({lab(g, 0) for g in N.generating_set()} | {lab(0, m) for m in M.generating_set()}))
    table = GroupTable(tuple(tuple(r) for r in product), tuple(inverse), gens)
    if order <= _EXHAUSTIVE_ASSOCIATIVITY:
        table.check()
    return table


def direct_product(N: GroupTable, M: GroupTable) -> GroupTable:
    ident = tuple(N.elements)
    return semidirect_group(N, M, [ident] * M.order)


@dataclass(frozen=True)
class LinearRep:
    """A representation of ``group`` on ``Q^dimension`` (one matrix per element)."""

    group: GroupTable
    dimension: int
    matrices: tuple[linalg.Matrix, ...]

    def __call__(self, g: int) -> linalg.Matrix:
        return self.matrices[g]

    def act(self, g: int, v: Sequence[Fraction]) -> linalg.Vector:
        return linalg.mat_vec(self.matrices[g], v)

    def check(self) -> None:
        G, n = self.group, self.dimension
        if len(self.matrices) != G.order:
            raise ValidationError("one matrix per group element is required")
        if self.matrices[0] != linalg.identity(n):
            raise ValidationError("the identity must act as the identity matrix")
        for a in G.elements:
            for b in G.elements:
                if self.matrices[G.product[a][b]] != linalg.mat_mul(self.matrices[a], self.matrices[b]):
                    raise ValidationError(f"representation not multiplicative at ({a}, {b})", witness=(a, b))


def trivial_rep(G: GroupTable, dimension: int) -> LinearRep:
    return LinearRep(G, dimension, (linalg.identity(dimension),) * G.order)


def rep_from_generators(
    G: GroupTable, dimension: int, gens: Sequence[int], images: Sequence[Sequence[Sequence]]
) -> LinearRep:
    """Extend matrices given on generating elements to the whole group."""
    images = [linalg.matrix(m) if dimension else () for m in images]
    for g, m in zip(gens, images):
        if len(m) != dimension or any(len(r) != dimension for r in m):
            raise ValidationError(f"matrix for element {G.label(g)} is not {dimension}x{dimension}")
        if linalg.inverse(m) is None:
            raise ValidationError(f"matrix for element {G.label(g)} is singular")
    mats: list = [None] * G.order
    mats[0] = linalg.identity(dimension)
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for s, m in zip(gens, images):
            y = G.product[x][s]
            my = linalg.mat_mul(mats[x], m) if dimension else ()
            if mats[y] is None:
                mats[y] = my
                queue.append(y)
            elif mats[y] != my:
                raise ValidationError(
                    f"matrices do not define a representation (relation fails at {G.label(y)})",
                    witness=(x, s),
                )
    if any(m is None for m in mats):
        raise ValidationError("given elements do not generate the group")
    rep = LinearRep(G, dimension, tuple(mats))
    rep.check()
    return rep


def cocycle_space(G: GroupTable, V: LinearRep) -> list[tuple[linalg.Vector, ...]]:
    """Reduced echelon basis of ``Z^1(G, V)``.

    A cocycle is returned as the tuple of its values ``d(g)`` indexed by
    label; the flattening used for the echelon form is label-major.
    """
    n = V.dimension
    size = G.order * n
    ech = linalg.Echelon(size)
    for g in G.elements:
        for h in G.elements:
            gh = G.product[g][h]
            mat = V.matrices[g]
            # d(gh) - d(g) - g.d(h) = 0, one row per coordinate
            for i in range(n):
                row: dict[int, Fraction] = {}

                def put(col, val):
                    row[col] = row.get(col, linalg.ZERO) + val

                put(gh * n + i, linalg.ONE)
                put(g * n + i, -linalg.ONE)
                for j in range(n):
                    if mat[i][j]:
                        put(h * n + j, -mat[i][j])
                ech.add({k: v for k, v in row.items() if v})
    basis = []
    for vec in ech.nullspace():
        basis.append(tuple(tuple(vec[g * n:(g + 1) * n]) for g in G.elements))
    return basis


def is_cocycle(G: GroupTable, V: LinearRep, d: Sequence[Sequence[Fraction]]) -> bool:
    return all(
        tuple(d[G.product[g][h]]) == linalg.add(d[g], V.act(g, d[h]))
        for g in G.elements
        for h in G.elements
    )
