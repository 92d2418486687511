"""Exact rational linear algebra over :class:`fractions.Fraction`.

Vectors are tuples of Fractions, matrices are tuples of row tuples.  Large
constraint systems are fed row by row into :class:`Echelon`, which keeps a
sparse, fully reduced row echelon form as it goes.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Vector = tuple
Matrix = tuple

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; use p/q rationals")
    return Fraction(x)


def vector(values: Iterable) -> Vector:
    return tuple(frac(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(n))


def is_zero(v: Sequence[Fraction]) -> bool:
    return all(c == 0 for c in v)


def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Sequence[Fraction]) -> Vector:
    c = frac(c)
    return tuple(c * a for a in v)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), ZERO)


def matrix(rows: Iterable[Iterable]) -> Matrix:
    return tuple(vector(r) for r in rows)


def identity(n: int) -> Matrix:
    return tuple(unit_vector(n, i) for i in range(n))


def zeros(nrows: int, ncols: int) -> Matrix:
    return tuple(zero_vector(ncols) for _ in range(nrows))


def transpose(m: Matrix, ncols: int | None = None) -> Matrix:
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*m))


def mat_vec(m: Matrix, v: Sequence[Fraction]) -> Vector:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Matrix, b: Matrix, inner: int | None = None) -> Matrix:
    """Product ``a @ b``; ``inner`` is only needed when ``b`` has no rows."""
    if not a:
        return ()
    ncols = len(b[0]) if b else 0
    if not b:
        return tuple(zero_vector(ncols) for _ in a)
    return tuple(
        tuple(sum((row[k] * b[k][j] for k in range(len(b))), ZERO) for j in range(ncols))
        for row in a
    )


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(add(r, s) for r, s in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(sub(r, s) for r, s in zip(a, b))


def mat_scale(c, a: Matrix) -> Matrix:
    return tuple(scale(c, r) for r in a)


def column(m: Matrix, j: int) -> Vector:
    return tuple(row[j] for row in m)


def from_columns(cols: Sequence[Sequence[Fraction]], nrows: int) -> Matrix:
    return tuple(tuple(col[i] for col in cols) for i in range(nrows))


def inverse(m: Matrix) -> Matrix | None:
    """Inverse of a square matrix, or ``None`` when singular."""
    n = len(m)
    aug = [list(row) + list(unit_vector(n, i)) for i, row in enumerate(m)]
    for c in range(n):
        pivot = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if pivot is None:
            return None
        aug[c], aug[pivot] = aug[pivot], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


class Echelon:
    """Incremental reduced row echelon form of a set of sparse rows.

    Rows are dicts ``{column: value}``.  The basis is kept fully reduced:
    every pivot column is zero in every other stored row, and every pivot
    entry equals one.
    """

    def __init__(self, ncols: int, rows: Iterable = ()):
        self.ncols = ncols
        self._rows: dict[int, dict[int, Fraction]] = {}
        for r in rows:
            self.add(r)

    @staticmethod
    def _sparse(row) -> dict[int, Fraction]:
        if isinstance(row, Mapping):
            return {k: frac(v) for k, v in row.items() if v != 0}
        return {k: frac(v) for k, v in enumerate(row) if v != 0}

    def reduce(self, row) -> dict[int, Fraction]:
        r = self._sparse(row)
        # stored rows vanish on every other pivot column, so one pass suffices
        for col in [c for c in r if c in self._rows]:
            c = r.get(col)
            if not c:
                continue
            for k, v in self._rows[col].items():
                nv = r.get(k, ZERO) - c * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        return r

    def add(self, row) -> bool:
        """Insert a row; return ``True`` when it was independent."""
        r = self.reduce(row)
        if not r:
            return False
        piv = min(r)
        p = r[piv]
        r = {k: v / p for k, v in r.items()}
        for other in self._rows.values():
            c = other.get(piv)
            if c:
                for k, v in r.items():
                    nv = other.get(k, ZERO) - c * v
                    if nv:
                        other[k] = nv
                    else:
                        other.pop(k, None)
        self._rows[piv] = r
        return True

    def contains(self, row) -> bool:
        return not self.reduce(row)

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(sorted(self._rows))

    def sparse_rows(self) -> list[dict[int, Fraction]]:
        return [dict(self._rows[p]) for p in self.pivots]

    def rows(self) -> tuple[Vector, ...]:
        out = []
        for p in self.pivots:
            r = self._rows[p]
            out.append(tuple(r.get(k, ZERO) for k in range(self.ncols)))
        return tuple(out)

    def nullspace(self) -> tuple[Vector, ...]:
        """Reduced echelon basis of ``{v : row . v = 0 for every row}``."""
        free = [c for c in range(self.ncols) if c not in self._rows]
        basis = Echelon(self.ncols)
        for f in free:
            v = {f: ONE}
            for p, r in self._rows.items():
                c = r.get(f)
                if c:
                    v[p] = -c
            basis.add(v)
        return basis.rows()


def rref(rows: Iterable, ncols: int) -> tuple[Vector, ...]:
    return Echelon(ncols, rows).rows()


def rank(rows: Iterable, ncols: int) -> int:
    return Echelon(ncols, rows).rank


def nullspace(rows: Iterable, ncols: int) -> tuple[Vector, ...]:
    """Reduced echelon basis of the right kernel of the given rows."""
    return Echelon(ncols, rows).nullspace()


def solve(columns: Sequence[Sequence[Fraction]], target: Sequence[Fraction]) -> Vector | None:
    """Coefficients ``c`` with ``sum c_i columns[i] == target``, or ``None``."""
    n = len(columns)
    m = len(target)
    if n == 0:
        return () if is_zero(target) else None
    # augmented system rows: one per coordinate of the ambient space
    rows = [[columns[i][r] for i in range(n)] + [target[r]] for r in range(m)]
    ech = Echelon(n + 1, rows)
    if n in ech.pivots:
        return None
    sol = [ZERO] * n
    for r in ech.sparse_rows():
        p = min(r)
        sol[p] = r.get(n, ZERO)
    return tuple(sol)


def span_equal(a: Iterable, b: Iterable, ncols: int) -> bool:
    return rref(a, ncols) == rref(b, ncols)


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
