import pytest
from hypothesis import given, settings, strategies as st

from semiprime_lab.errors import EmptyGenerators, NotCoprime
from semiprime_lab.semigroup import from_generators

from oracles import semigroup_member_oracle


def test_2_5():
    S = from_generators([2, 5])
    assert S.conductor == 4
    assert S.gaps == (1, 3)
    assert S.frobenius == 3


def test_unit_semigroup():
    S = from_generators([1])
    assert S.conductor == 0
    assert S.gaps == ()
    assert S.frobenius == -1
    assert S.contains(0) and S.contains(7)


def test_3_4_5():
    S = from_generators([3, 4, 5])
    assert S.conductor == 3
    assert S.gaps == (1, 2)


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_two_gen_odd_conductor(r):
    assert from_generators([2, 2 * r + 1]).conductor == 2 * r


def test_frobenius_is_max_gap():
    for gens in ([2, 5], [3, 4, 5], [2, 7], [4, 5, 6, 7], [6, 10, 15]):
        S = from_generators(gens)
        if S.gaps:
            assert S.frobenius == max(S.gaps)
            assert S.conductor == S.frobenius + 1
            assert not S.contains(S.conductor - 1)
        assert S.contains(S.conductor)


def test_membership_examples():
    S = from_generators([2, 5])
    assert not S.contains(3)
    assert S.contains(0)
    assert from_generators([3, 4, 5]).contains(7)
    assert not S.contains(-1)


def test_generator_order_is_normalized():
    assert from_generators([5, 2]).generators == (2, 5)
    assert from_generators([2, 5, 2]).generators == (2, 5)


def test_errors():
    with pytest.raises(EmptyGenerators):
        from_generators([])
    with pytest.raises(NotCoprime):
        from_generators([2, 4])
    with pytest.raises(ValueError):
        from_generators([0, 3])


@st.composite
def coprime_gens(draw):
    gens = draw(st.lists(st.integers(min_value=1, max_value=30), min_size=1, max_size=4))
    import math

    if math.gcd(*gens) != 1:
        gens.append(draw(st.sampled_from([g + 1 for g in gens])))
    if math.gcd(*gens) != 1:
        gens.append(1)
    return gens


@settings(max_examples=60, deadline=None)
@given(coprime_gens())
def test_fuzz_membership_matches_bfs_and_is_closed(gens):
    S = from_generators(gens)
    bound = 2 * S.conductor + max(gens) + 1
    reach = semigroup_member_oracle(sorted(set(gens)), bound)
    for e in range(bound + 1):
        assert S.contains(e) == (e in reach)
    members = [e for e in range(2 * S.conductor + 1) if S.contains(e)]
    for a in members:
        for b in members:
            assert S.contains(a + b)
