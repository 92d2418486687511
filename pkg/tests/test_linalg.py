from fractions import Fraction

from hypothesis import given, settings, strategies as st

from cocohopf import linalg

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(n, m):
    return st.lists(st.lists(small, min_size=m, max_size=m), min_size=n, max_size=n)


@given(matrices(3, 4))
@settings(max_examples=60, deadline=None)
def test_rank_nullity(rows):
    ns = linalg.nullspace(rows, 4)
    assert linalg.rank(rows, 4) + len(ns) == 4
    for v in ns:
        assert all(linalg.dot(r, v) == 0 for r in rows)


@given(matrices(3, 3))
@settings(max_examples=60, deadline=None)
def test_inverse_is_two_sided(m):
    m = linalg.matrix(m)
    inv = linalg.inverse(m)
    if inv is None:
        assert linalg.rank(m, 3) < 3
    else:
        assert linalg.mat_mul(m, inv) == linalg.identity(3)
        assert linalg.mat_mul(inv, m) == linalg.identity(3)


@given(matrices(3, 3), st.lists(small, min_size=3, max_size=3))
@settings(max_examples=60, deadline=None)
def test_solve_reproduces_target(cols, target):
    x = linalg.solve(cols, target)
    combo = [sum((c[i] * x[j] for j, c in enumerate(cols)), Fraction(0)) for i in range(3)] if x else None
    if x is not None:
        assert tuple(combo) == linalg.vector(target)
    else:
        assert linalg.rank(list(cols) + [target], 3) > linalg.rank(cols, 3)


def test_echelon_membership_and_reduce():
    e = linalg.Echelon(3, [(1, 1, 0), (0, 1, 1)])
    assert e.rank == 2
    assert e.contains((1, 2, 1))
    assert not e.contains((0, 0, 1))
    assert not e.reduce((2, 3, 1))
    assert linalg.span_equal([(1, 0, 0), (0, 1, 0)], [(1, 1, 0), (1, -1, 0)], 3)


def test_format_fraction():
    assert linalg.format_fraction(Fraction(3, 2)) == "3/2"
    assert linalg.format_fraction(Fraction(-4)) == "-4"
