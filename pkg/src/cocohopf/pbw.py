"""Arithmetic in the universal enveloping algebra ``U(L)`` in the PBW basis.

A monomial is an exponent tuple ``(a_1, ..., a_n)`` standing for the ordered
product ``e_1^a_1 ... e_n^a_n``; an element is a dict ``monomial -> Fraction``
without zero entries.

Orientation: out-of-order letters are rewritten with

    e_j e_i = e_i e_j + [e_i, e_j]      (j > i)

so the bracket of two primitives is ``[x, y] = yx - xy`` inside ``U(L)``, and
the algebra commutator is ``uv - vu = [v, u]``.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .lie import LieAlgebra
from .linalg import ZERO, ONE

Monomial = tuple
UElem = dict


def one_mono(n: int) -> Monomial:
    return (0,) * n


def one(n: int) -> UElem:
    return {one_mono(n): ONE}


def letter_mono(n: int, i: int) -> Monomial:
    return tuple(1 if j == i else 0 for j in range(n))


def from_vector(v: Sequence[Fraction]) -> UElem:
    n = len(v)
    return {letter_mono(n, i): Fraction(c) for i, c in enumerate(v) if c}


def degree(m: Monomial) -> int:
    return sum(m)


def word(m: Monomial) -> tuple[int, ...]:
    return tuple(i for i, a in enumerate(m) for _ in range(a))


def element_degree(u: UElem) -> int:
    return max((degree(m) for m in u), default=-1)


def monomials(n: int, max_degree: int) -> list[Monomial]:
    """All monomials of degree ``<= max_degree``, by degree then word order."""
    out = []
    for d in range(max_degree + 1):
        for w in itertools.combinations_with_replacement(range(n), d):
            m = [0] * n
            for i in w:
                m[i] += 1
            out.append(tuple(m))
    return out


def add_into(acc: dict, u: dict, c: Fraction = ONE) -> dict:
    for k, v in u.items():
        nv = acc.get(k, ZERO) + c * v
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)
    return acc


def lin(*pairs) -> dict:
    """Linear combination ``sum c * u`` of elements given as ``(c, u)`` pairs."""
    acc: dict = {}
    for c, u in pairs:
        add_into(acc, u, Fraction(c))
    return acc


def scale(c, u: dict) -> dict:
    c = Fraction(c)
    if not c:
        return {}
    return {k: c * v for k, v in u.items()}


def _cache(L: LieAlgebra, name: str) -> dict:
    return L._cache.setdefault(name, {})


def mul_letter(L: LieAlgebra, m: Monomial, k: int) -> UElem:
    """``m * e_k`` in normal form (memoized on ``L``)."""
    memo = _cache(L, "mul_letter")
    key = (m, k)
    hit = memo.get(key)
    if hit is not None:
        return hit
    j = max((i for i, a in enumerate(m) if a), default=-1)
    if j <= k:
        out = {m[:k] + (m[k] + 1,) + m[k + 1:]: ONE}
    else:
        # m = m' e_j and e_j e_k = e_k e_j + [e_k, e_j]
        mp = m[:j] + (m[j] - 1,) + m[j + 1:]
        out = {}
        for t, c in mul_letter(L, mp, k).items():
            add_into(out, mul_letter(L, t, j), c)
        for c_idx, c in enumerate(L.brackets[k][j]):
            if c:
                add_into(out, mul_letter(L, mp, c_idx), c)
    memo[key] = out
    return out


def mul_mono(L: LieAlgebra, m1: Monomial, m2: Monomial) -> UElem:
    memo = _cache(L, "mul_mono")
    key = (m1, m2)
    hit = memo.get(key)
    if hit is not None:
        return hit
    cur = {m1: ONE}
    for k in word(m2):
        nxt: dict = {}
        for t, c in cur.items():
            add_into(nxt, mul_letter(L, t, k), c)
        cur = nxt
    memo[key] = cur
    return cur


def mul(L: LieAlgebra, u: UElem, v: UElem) -> UElem:
    out: dict = {}
    for m1, c1 in u.items():
        for m2, c2 in v.items():
            add_into(out, mul_mono(L, m1, m2), c1 * c2)
    return out


def power(L: LieAlgebra, u: UElem, k: int) -> UElem:
    out = one(L.dim)
    for _ in range(k):
        out = mul(L, out, u)
    return out


def straighten(L: LieAlgebra, w: Sequence[int]) -> UElem:
    """PBW normal form of the product of the letters in ``w``."""
    for i in w:
        if not 0 <= i < L.dim:
            raise IndexError(f"letter {i} out of range for a {L.dim}-dimensional algebra")
    cur = one(L.dim)
    for k in w:
        nxt: dict = {}
        for t, c in cur.items():
            add_into(nxt, mul_letter(L, t, k), c)
        cur = nxt
    return cur


def straighten_by_rewriting(L: LieAlgebra, w: Sequence[int], strategy: str = "left") -> UElem:
    """Independent word-rewriting normal form.

    Repeatedly rewrites the leftmost (or rightmost) adjacent inversion of
    some word until every word is sorted.
    """
    words: dict[tuple[int, ...], Fraction] = {tuple(w): ONE}
    while True:
        target = next((x for x in words if any(x[p] > x[p + 1] for p in range(len(x) - 1))), None)
        if target is None:
            break
        c = words.pop(target)
        positions = [p for p in range(len(target) - 1) if target[p] > target[p + 1]]
        p = positions[0] if strategy == "left" else positions[-1]
        j, i = target[p], target[p + 1]
        swapped = target[:p] + (i, j) + target[p + 2:]
        add_into(words, {swapped: c})
        for k, b in enumerate(L.brackets[i][j]):
            if b:
                add_into(words, {target[:p] + (k,) + target[p + 2:]: c * b})
    out: dict = {}
    for x, c in words.items():
        m = [0] * L.dim
        for i in x:
            m[i] += 1
        add_into(out, {tuple(m): c})
    return out


def apply_algebra_map(
    target: LieAlgebra, images: Sequence[UElem], u: UElem
) -> UElem:
    """Image of ``u`` under the algebra map sending letter ``i`` to ``images[i]``."""
    out: dict = {}
    cache: dict = {}
    for m, c in u.items():
        val = cache.get(m)
        if val is None:
            val = one(target.dim)
            for i, a in enumerate(m):
                for _ in range(a):
                    val = mul(target, val, images[i])
            cache[m] = val
        add_into(out, val, c)
    return out


def linear_letter_images(matrix: Sequence[Sequence[Fraction]], src_dim: int, tgt_dim: int) -> list[UElem]:
    """Letter images of the linear map whose columns are the images of basis vectors."""
    return [
        from_vector(tuple(matrix[r][i] for r in range(tgt_dim))) if tgt_dim else {}
        for i in range(src_dim)
    ]


def apply_derivation(L: LieAlgebra, images: Sequence[UElem], u: UElem) -> UElem:
    """Extend ``letter i -> images[i]`` to a derivation of ``U(L)`` (Leibniz rule)."""
    out: dict = {}
    for m, c in u.items():
        w = word(m)
        for p, letter in enumerate(w):
            img = images[letter]
            if not img:
                continue
            left = {m_prefix(L, w[:p]): ONE}
            term = mul(L, left, img)
            for k in w[p + 1:]:
                nxt: dict = {}
                for t, cc in term.items():
                    add_into(nxt, mul_letter(L, t, k), cc)
                term = nxt
            add_into(out, term, c)
    return out


def m_prefix(L: LieAlgebra, w: Sequence[int]) -> Monomial:
    # prefixes of a sorted word are already PBW monomials
    m = [0] * L.dim
    for i in w:
        m[i] += 1
    return tuple(m)


def antipode(L: LieAlgebra, u: UElem) -> UElem:
    """``S(e_1^a_1...e_n^a_n) = (-1)^deg e_n^a_n ... e_1^a_1``."""
    out: dict = {}
    for m, c in u.items():
        w = word(m)
        sign = -1 if len(w) % 2 else 1
        add_into(out, straighten(L, tuple(reversed(w))), c * sign)
    return out


def coproduct_mono(m: Monomial) -> list[tuple[Monomial, Monomial, int]]:
    """Binomial expansion of ``Delta(m)`` as ``(left, right, coefficient)``."""
    ranges = [range(a + 1) for a in m]
    out = []
    for ks in itertools.product(*ranges):
        c = 1
        for a, k in zip(m, ks):
            c *= comb(a, k)
        out.append((tuple(ks), tuple(a - k for a, k in zip(m, ks)), c))
    return out


def format_element(names: Sequence[str], u: UElem) -> str:
    from .linalg import format_fraction

    if not u:
        return "0"
    parts = []
    for m in sorted(u, key=lambda m: (degree(m), word(m))):
        c = u[m]
        body = "*".join(
            names[i] if a == 1 else f"{names[i]}^{a}" for i, a in enumerate(m) if a
        )
        if not body:
            parts.append(format_fraction(c))
        elif c == 1:
            parts.append(body)
        elif c == -1:
            parts.append("-" + body)
        else:
            parts.append(f"{format_fraction(c)}*{body}")
    return " + ".join(parts).replace("+ -", "- ")


def iter_terms(u: UElem) -> Iterable[tuple[Monomial, Fraction]]:
    return u.items()
