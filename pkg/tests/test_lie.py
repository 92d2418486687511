import pytest
from hypothesis import given, settings, strategies as st

from cocohopf import lie
from cocohopf.errors import LieAlgebraError

small = st.fractions(min_value=-3, max_value=3, max_denominator=3)
vec3 = st.lists(small, min_size=3, max_size=3)


def test_heisenberg_structure():
    h = lie.heisenberg()
    assert lie.lie_center(h).dim == 1
    assert lie.derived_algebra(h).dim == 1
    assert len(lie.lie_derivations(h)) == 6


def test_jacobi_violation_rejected():
    with pytest.raises(LieAlgebraError):
        lie.lie_from_structure_constants(
            ["a", "b", "c"], {("a", "b"): {"c": 1}, ("b", "c"): {"a": 1}, ("a", "c"): {"a": 1}}
        )


@given(vec3, vec3)
@settings(max_examples=50, deadline=None)
def test_antisymmetry(u, v):
    h = lie.heisenberg()
    assert h.bracket(u, v) == tuple(-x for x in h.bracket(v, u))


def test_quotient_and_restriction():
    h = lie.heisenberg()
    q = lie.quotient_by_ideal(h, lie.Subspace.span(3, [(0, 0, 1)]))
    assert q.algebra.dim == 2 and q.algebra.is_abelian()
    with pytest.raises(LieAlgebraError):
        lie.quotient_by_ideal(h, lie.Subspace.span(3, [(1, 0, 0)]))
    sub, inc = lie.restrict_subalgebra(h, lie.Subspace.span(3, [(1, 0, 0), (0, 0, 1)]))
    assert sub.dim == 2 and sub.is_abelian() and lie.hom_witness(inc) is None


def test_semidirect_lie_two_dim_nonabelian():
    M, L = lie.abelian_lie(["m"]), lie.abelian_lie(["l"])
    E = lie.semidirect_lie(M, L, [[[1]]])
    assert E.dim == 2 and not E.is_abelian()
    assert lie.derived_algebra(E).dim == 1
