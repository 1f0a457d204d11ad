import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fhtkit import oracles
from fhtkit.affine_weyl import interior_weights, random_affine_elem, shifted_action
from fhtkit.characters import (
    AlternatingCharacter,
    CosetSystem,
    FormalCharacter,
    InconsistencyError,
    PeriodicCharacter,
    alternating_extend,
    char_multiply,
    coset_indicator,
    dumps,
    lattice_shift,
    loads,
    periodize,
    restrict_to_alcove,
)
from fhtkit.rootsystem import build_root_system


def characters(rank, n_terms=20, radius=5):
    w = st.lists(st.integers(-radius, radius), min_size=rank, max_size=rank).map(tuple)
    return st.dictionaries(w, st.integers(-3, 3), max_size=n_terms).map(FormalCharacter)


def e(*w, m=1):
    return FormalCharacter.monomial(tuple(w), m)


def test_zero_multiplicities_dropped():
    fc = FormalCharacter({(1,): 0, (2,): 3})
    assert fc.support == {(2,): 3}
    assert not (fc - fc)


def test_multiply_examples():
    a = e(1) + e(-1)
    assert a * e(0) == a
    assert a * a == e(2) + e(0, m=2) + e(-2)
    assert (e(0) - e(-2)) * a == e(1) - e(-3)


@given(characters(2), characters(2))
def test_multiply_vs_dense_oracle(a, b):
    assert char_multiply(a, b) == oracles.dense_multiply(a, b)
    assert a * b == b * a


@given(characters(2, 6, 3), characters(2, 6, 3), characters(2, 6, 3))
def test_multiply_associative_distributive(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


def test_coset_counts():
    for name, level, size in [("A1", 3, 6), ("A1", 2, 4), ("A2", 2, 12), ("B2", 1, 4), ("G2", 2, 12)]:
        rs = build_root_system(name)
        cs = CosetSystem.of(rs, level)
        assert cs.size == size == level ** rs.rank * rs.lattice_index
        reps = cs.transversal()
        assert len(set(reps)) == size and all(cs.reduce(r) == r for r in reps)


@pytest.mark.parametrize("name,level", [("A1", 3), ("A2", 2), ("B2", 3), ("G2", 2), ("C3", 1)])
@given(data=st.data())
def test_reduce_lands_in_same_coset(name, level, data):
    rs = build_root_system(name)
    cs = CosetSystem.of(rs, level)
    xi = data.draw(st.lists(st.integers(-40, 40), min_size=rs.rank, max_size=rs.rank).map(tuple))
    rep = cs.reduce(xi)
    assert rep in set(cs.transversal())
    eta = cs.translation_of(xi, rep)
    assert tuple(r + s for r, s in zip(rep, lattice_shift(rs, eta, level))) == xi


def test_periodize_examples(A1):
    assert periodize(A1, e(0), 3) == coset_indicator(A1, (0,), 3)
    assert periodize(A1, e(0) + e(6), 3) == PeriodicCharacter(A1, 3, {(0,): 2})
    ind = coset_indicator(A1, (0,), 3)
    assert [ind((x,)) for x in (-12, -6, 0, 6, 12)] == [1] * 5
    assert [ind((x,)) for x in range(1, 6)] == [0] * 5


@pytest.mark.parametrize("name,level", [("A1", 3), ("A2", 2), ("G2", 1)])
@given(data=st.data())
def test_periodize_translation_invariant_and_additive(name, level, data):
    rs = build_root_system(name)
    a, b = data.draw(characters(rs.rank)), data.draw(characters(rs.rank))
    eta = data.draw(st.lists(st.integers(-2, 2), min_size=rs.rank, max_size=rs.rank).map(tuple))
    assert periodize(rs, a.shift(lattice_shift(rs, eta, level)), level) == periodize(rs, a, level)
    assert periodize(rs, a + b, level) == periodize(rs, a, level) + periodize(rs, b, level)


def test_alternating_extend_examples(A1):
    delta = AlternatingCharacter.delta(A1, 3, (0,))
    assert alternating_extend(delta, (0,)) == 1
    assert alternating_extend(delta, (4,)) == -1
    ac = AlternatingCharacter(A1, 3, {(0,): 5, (1,): -2})
    assert alternating_extend(ac, (2,)) == 0
    assert alternating_extend(ac, (1,)) == -2


@pytest.mark.parametrize("name,level", [("A1", 4), ("A1", 6), ("A2", 5), ("B2", 5), ("G2", 6)])
@given(data=st.data())
def test_alternation(name, level, data):
    rs = build_root_system(name)
    interior = interior_weights(rs, level)
    ac = AlternatingCharacter(rs, level, {w: data.draw(st.integers(-5, 5)) for w in interior})
    w = random_affine_elem(rs, random.Random(data.draw(st.integers(0, 10**6))), 6)
    xi = data.draw(st.lists(st.integers(-12, 12), min_size=rs.rank, max_size=rs.rank).map(tuple))
    assert alternating_extend(ac, shifted_action(rs, w, xi, level)) == w.parity * alternating_extend(ac, xi)


@pytest.mark.parametrize("name,levels", [("A1", range(2, 7)), ("A2", range(3, 6))])
def test_restrict_extend_identity(name, levels):
    rs = build_root_system(name)
    for level in levels:
        for lam in interior_weights(rs, level):
            delta = AlternatingCharacter.delta(rs, level, lam)
            assert restrict_to_alcove(rs, delta.window(10), level, 10) == delta


def test_restrict_zero_and_inconsistent(A1):
    assert restrict_to_alcove(A1, FormalCharacter(), 3, 10) == AlternatingCharacter(A1, 3, {})
    bad = AlternatingCharacter.delta(A1, 3, (0,)).window(10) + e(2)
    with pytest.raises(InconsistencyError) as info:
        restrict_to_alcove(A1, bad, 3, 10)
    assert info.value.weight == (2,)


def test_json_round_trips(A2):
    fc = FormalCharacter({(1, -2): 3, (0, 0): -1})
    pc = PeriodicCharacter(A2, 2, {(0, 0): 1, (1, 1): -4})
    ac = AlternatingCharacter(A2, 5, {(1, 0): 2, (0, 2): -1})
    for obj in (fc, pc, ac):
        text = dumps(obj)
        back = loads(text)
        assert back == obj and dumps(back) == text
    with pytest.raises(ValueError):
        loads('{"type": "mystery"}')
