from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fhtkit.lattice_cocycle import (
    GroupElem,
    Phase,
    TorusElem,
    eta_epsilon,
    inverse,
    kappa,
    multiply,
    psi,
    sigma,
    sigma_phase,
)
from fhtkit.rootsystem import b_flat, build_root_system, inner_product_coroots

TYPES = ["A1", "A2", "B2", "G2", "B3"]


def coroot(rs, bound=5):
    return st.lists(st.integers(-bound, bound), min_size=rs.rank, max_size=rs.rank).map(tuple)


def group_elem(rs, level):
    frac = st.fractions(min_value=0, max_value=1, max_denominator=24)
    t = st.lists(frac, min_size=rs.rank, max_size=rs.rank)
    return st.builds(lambda t, e, z: GroupElem.make(t, e, z, level), t, coroot(rs, 4), frac)


def test_kappa_examples(A1):
    assert kappa(A1, (0,), TorusElem((Fraction(1, 3),)), 5) == Phase(0)
    assert kappa(A1, (1,), TorusElem((Fraction(1, 4),)), 1) == Phase(Fraction(1, 2))
    assert kappa(A1, (1,), TorusElem((Fraction(1, 4),)), 2) == Phase(0)


def test_sigma_examples(A1, A2):
    assert all(sigma(A1, (a,), (b,)) == 1 for a in range(-3, 4) for b in range(-3, 4))
    assert sigma(A2, (0, 1), (1, 0)) == -1
    assert sigma(A2, (1, 0), (0, 1)) == 1


def test_identity_is_two_sided_unit(A2):
    e = GroupElem.identity(2, 3)
    g = GroupElem.make((Fraction(1, 5), Fraction(2, 3)), (1, -2), Fraction(1, 7), 3)
    for v in ("bas", "triv"):
        assert multiply(A2, e, g, v) == g == multiply(A2, g, e, v)


def test_commutator_example(A2):
    b1 = GroupElem.make((0, 0), (1, 0))
    b2 = GroupElem.make((0, 0), (0, 1))
    p12, p21 = multiply(A2, b1, b2), multiply(A2, b2, b1)
    assert p12.eta == p21.eta
    assert (p21.z.value - p12.z.value) % 1 == Fraction(1, 2)


def test_kappa_phase_in_product(A1):
    g1 = GroupElem.make((Fraction(1, 4),), (1,))
    g2 = GroupElem.make((Fraction(1, 4),), (0,))
    assert multiply(A1, g1, g2).z == Phase(Fraction(1, 2))


def test_level_mismatch(A2):
    with pytest.raises(ValueError):
        multiply(A2, GroupElem.identity(2, 1), GroupElem.identity(2, 2))


def test_eta_epsilon_examples(A1, A2):
    assert eta_epsilon(A1, (3,)) == TorusElem.identity(1)
    assert eta_epsilon(A2, (0, 0)) == TorusElem.identity(2)
    # exp(eta_eps(beta_1))^{B_flat(beta_2)} = sigma(beta_2, beta_1) = -1
    t = eta_epsilon(A2, (1, 0))
    pairing = sum(a * c for a, c in zip(b_flat(A2, (0, 1)), t.coords))
    assert Phase(pairing) == Phase(Fraction(1, 2))


def test_psi_examples(A1, A2):
    assert psi(A2, GroupElem.identity(2)) == GroupElem.identity(2)
    g = GroupElem.make((Fraction(1, 3),), (2,), Fraction(1, 5))
    assert psi(A1, g) == g
    b1, b2 = GroupElem.make((0, 0), (1, 0)), GroupElem.make((0, 0), (0, 1))
    assert psi(A2, multiply(A2, b2, b1, "bas")) == multiply(A2, psi(A2, b2), psi(A2, b1), "triv")


@pytest.mark.parametrize("name", TYPES)
@given(data=st.data())
def test_sigma_bimultiplicative_and_commutator(name, data):
    rs = build_root_system(name)
    a, b, c = (data.draw(coroot(rs)) for _ in range(3))
    ab = tuple(x + y for x, y in zip(a, b))
    assert sigma(rs, ab, c) == sigma(rs, a, c) * sigma(rs, b, c)
    assert sigma(rs, c, ab) == sigma(rs, c, a) * sigma(rs, c, b)
    assert sigma(rs, a, b) * sigma(rs, b, a) == (-1) ** inner_product_coroots(rs, a, b)


@pytest.mark.parametrize("name", TYPES)
@pytest.mark.parametrize("level", [1, 2, -3])
@given(data=st.data())
def test_group_laws(name, level, data):
    rs = build_root_system(name)
    g1, g2, g3 = (data.draw(group_elem(rs, level)) for _ in range(3))
    for v in ("bas", "triv"):
        assert multiply(rs, multiply(rs, g1, g2, v), g3, v) == multiply(rs, g1, multiply(rs, g2, g3, v), v)
        assert multiply(rs, g1, inverse(rs, g1, v), v) == GroupElem.identity(rs.rank, level)
        assert multiply(rs, inverse(rs, g1, v), g1, v) == GroupElem.identity(rs.rank, level)
    assert psi(rs, multiply(rs, g1, g2, "bas")) == multiply(rs, psi(rs, g1), psi(rs, g2), "triv")


@pytest.mark.parametrize("name", TYPES)
@given(data=st.data())
def test_absorbing_property(name, data):
    rs = build_root_system(name)
    mu, eta = data.draw(coroot(rs)), data.draw(coroot(rs))
    t = eta_epsilon(rs, eta)
    value = Phase(sum((a * c for a, c in zip(b_flat(rs, mu), t.coords)), Fraction(0)))
    assert value == sigma_phase(rs, mu, eta)
