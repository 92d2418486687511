from hypothesis import given, settings, strategies as st

from cocohopf import lie, pbw

H3 = lie.heisenberg()
words = st.lists(st.integers(min_value=0, max_value=2), max_size=5)


@given(words)
@settings(max_examples=80, deadline=None)
def test_straightening_is_strategy_independent(w):
    a = pbw.straighten(H3, w)
    assert a == pbw.straighten_by_rewriting(H3, w, "left")
    assert a == pbw.straighten_by_rewriting(H3, w, "right")


@given(words, words, words)
@settings(max_examples=60, deadline=None)
def test_associativity(a, b, c):
    x, y, z = (pbw.straighten(H3, w) for w in (a, b, c))
    assert pbw.mul(H3, pbw.mul(H3, x, y), z) == pbw.mul(H3, x, pbw.mul(H3, y, z))


def test_commutator_orientation():
    x, y = pbw.from_vector((1, 0, 0)), pbw.from_vector((0, 1, 0))
    comm = pbw.add_into(pbw.mul(H3, y, x), pbw.mul(H3, x, y), -1)
    assert comm == pbw.from_vector(H3.bracket((1, 0, 0), (0, 1, 0)))


def test_antipode_and_counts():
    assert len(pbw.monomials(3, 2)) == 10
    x = pbw.from_vector((1, 0, 0))
    assert pbw.antipode(H3, x) == pbw.scale(-1, x)
    xy = pbw.straighten(H3, [0, 1])
    # S(xy) = yx
    assert pbw.antipode(H3, xy) == pbw.straighten(H3, [1, 0])
