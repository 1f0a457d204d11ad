from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fhtkit.rootsystem import (
    LieType,
    RootSystemError,
    all_types,
    b_flat,
    build_root_system,
    inner_product_coroots,
    inner_product_weights,
    pairing,
    positive_root_count,
)

H_DUAL = {"A": lambda r: r + 1, "B": lambda r: 2 * r - 1, "C": lambda r: r + 1, "D": lambda r: 2 * r - 2}
H_DUAL_EXCEPTIONAL = {"E6": 12, "E7": 18, "E8": 30, "F4": 9, "G2": 4}
# |R+| from the standard tables
N_POS = {"A": lambda r: r * (r + 1) // 2, "B": lambda r: r * r, "C": lambda r: r * r, "D": lambda r: r * (r - 1)}
N_POS_EXCEPTIONAL = {"E6": 36, "E7": 63, "E8": 120, "F4": 24, "G2": 6}


def test_a1_basics(A1):
    assert len(A1.positive_roots) == 1
    assert A1.rho == (1,)
    assert A1.theta == (2,)
    assert A1.h_dual == 2


def test_a2_basics(A2):
    assert len(A2.positive_roots) == 3
    assert A2.h_dual == 3
    assert [list(r) for r in A2.gram_coroot] == [[2, -1], [-1, 2]]


def test_g2_basics(G2):
    assert len(G2.positive_roots) == 6
    assert G2.h_dual == 4


@pytest.mark.parametrize("bad", ["A0", "B1", "C1", "D2", "E5", "E9", "F3", "G3", "Q2", "", "A"])
def test_invalid_types_rejected(bad):
    with pytest.raises(RootSystemError):
        build_root_system(bad)


def test_parse_roundtrip():
    assert LieType.parse("e8") == LieType("E", 8)
    assert build_root_system(LieType("B", 3)).name == "B3"


@pytest.mark.parametrize("t", all_types(8), ids=lambda t: f"{t.series}{t.rank}")
def test_tables_all_types(t):
    rs = build_root_system(t)
    name = rs.name
    expected_h = H_DUAL_EXCEPTIONAL[name] if name in H_DUAL_EXCEPTIONAL else H_DUAL[t.series](t.rank)
    expected_n = N_POS_EXCEPTIONAL[name] if name in N_POS_EXCEPTIONAL else N_POS[t.series](t.rank)
    assert rs.h_dual == expected_h == 1 + pairing(rs, rs.rho, rs.theta_coroot)
    assert len(rs.positive_roots) == expected_n == positive_root_count(t)
    # coroot lengths are 2, 4 or 6 with the short ones at 2
    lengths = {inner_product_coroots(rs, c, c) for c in rs.positive_coroots}
    assert lengths <= {2, 4, 6} and min(lengths) == 2
    # theta has maximal height
    assert rs.height(rs.theta) == max(rs.height(r) for r in rs.positive_roots)


def test_pairing_examples(A2):
    assert pairing(A2, (1, 0), (1, 0)) == 1 and pairing(A2, (1, 0), (0, 1)) == 0
    assert pairing(A2, A2.rho, A2.theta_coroot) == 2
    assert pairing(A2, (0, 0), (3, -7)) == 0
    with pytest.raises(ValueError):
        pairing(A2, (1,), (1, 0))


def test_inner_product_examples(A1):
    assert inner_product_weights(A1, (1,), (1,)) == Fraction(1, 2)
    assert inner_product_weights(A1, (2,), (2,)) == 2
    assert inner_product_weights(A1, (5,), (0,)) == 0


def test_b_flat_examples(A1, A2):
    assert b_flat(A1, (1,)) == (2,)
    assert b_flat(A1, (0,)) == (0,)
    assert b_flat(A2, (1, 0)) == (2, -1)


@pytest.mark.parametrize("name", ["A2", "B3", "C3", "G2", "F4"])
@given(data=st.data())
def test_b_flat_symmetric_pairing(name, data):
    rs = build_root_system(name)
    vec = st.lists(st.integers(-6, 6), min_size=rs.rank, max_size=rs.rank).map(tuple)
    e1, e2 = data.draw(vec), data.draw(vec)
    assert pairing(rs, b_flat(rs, e1), e2) == pairing(rs, b_flat(rs, e2), e1) == inner_product_coroots(rs, e1, e2)


def test_lattice_index():
    assert [build_root_system(n).lattice_index for n in ("A1", "A2", "B2", "G2")] == [2, 3, 4, 3]
