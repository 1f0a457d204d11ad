import json
import math
import random
import threading
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fhtkit import oracles, verlinde
from fhtkit.rootsystem import build_root_system
from fhtkit.verlinde import (
    FreudenthalCache,
    FusionElement,
    LevelError,
    char_value,
    freudenthal_weights,
    fusion,
    level_weights,
    project_decomposition,
    project_to_level,
    s_matrix,
    special_points,
    tensor_decompose,
    verlinde_fusion,
    weyl_dimension,
)


def F(k, *pairs):
    return FusionElement(k, dict(pairs))


def test_level_weights_examples(A1, A2, G2):
    assert tuple(level_weights(A1, 1)) == ((0,), (1,))
    assert set(level_weights(A2, 1)) == {(0, 0), (1, 0), (0, 1)}
    for rs in (A1, A2, G2):
        assert tuple(level_weights(rs, 0)) == (rs.zero,)
    with pytest.raises(LevelError):
        level_weights(A1, -1)


def test_freudenthal_examples(A1, A2):
    assert freudenthal_weights(A1, (1,)).mults == {(1,): 1, (-1,): 1}
    assert freudenthal_weights(A1, (2,)).mults == {(2,): 1, (0,): 1, (-2,): 1}
    adj = freudenthal_weights(A2, (1, 1))
    assert adj.dimension == 8 and adj.mults[(0, 0)] == 2


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "B2", "B3", "C3", "G2"])
def test_freudenthal_matches_weyl_dimension(name):
    rs = build_root_system(name)
    bound = 4 if rs.rank <= 2 else 3
    for lam in __import__("itertools").product(range(bound + 1), repeat=rs.rank):
        ws = freudenthal_weights(rs, lam)
        assert ws.dimension == weyl_dimension(rs, lam)
        assert ws.mults[lam] == 1


def test_tensor_examples(A1, A2):
    assert tensor_decompose(A1, (3,), (0,)) == {(3,): 1}
    assert tensor_decompose(A1, (1,), (1,)) == {(0,): 1, (2,): 1}
    assert tensor_decompose(A2, (1, 0), (0, 1)) == {(0, 0): 1, (1, 1): 1}


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
@given(data=st.data())
def test_tensor_vs_peel_oracle(name, data):
    rs = build_root_system(name)
    small = st.lists(st.integers(0, 2), min_size=rs.rank, max_size=rs.rank).map(tuple)
    a, b = data.draw(small), data.draw(small)
    prod = freudenthal_weights(rs, a).character() * freudenthal_weights(rs, b).character()
    peeled = oracles.peel_decomposition(rs, prod, lambda w: freudenthal_weights(rs, w).character())
    got = tensor_decompose(rs, a, b)
    assert got == peeled
    assert sum(n * weyl_dimension(rs, nu) for nu, n in got.items()) == weyl_dimension(rs, a) * weyl_dimension(rs, b)


def test_fusion_examples(A1, A2):
    assert fusion(A1, (1,), (1,), 1) == F(1, ((0,), 1))
    assert fusion(A1, (2,), (2,), 2) == F(2, ((0,), 1))
    assert fusion(A2, (1, 1), (0, 0), 2) == F(2, ((1, 1), 1))
    with pytest.raises(LevelError):
        fusion(A1, (2,), (0,), 1)


def test_project_examples(A1):
    assert project_to_level(A1, (1,), 1) == F(1, ((1,), 1))
    assert project_to_level(A1, (2,), 1) == F(1)
    assert project_to_level(A1, (3,), 1) == F(1, ((1,), -1))


def test_s_matrix_a1_k1(A1):
    sm = s_matrix(A1, 1)
    pattern = np.array([[math.sin(math.pi / 3), math.sin(2 * math.pi / 3)],
                        [math.sin(2 * math.pi / 3), math.sin(4 * math.pi / 3)]])
    ratio = sm.entries / pattern
    assert np.allclose(ratio, ratio[0, 0])
    assert verlinde_fusion(A1, (1,), (1,), 1) == F(1, ((0,), 1))


def test_verlinde_fusion_examples(A1, A2):
    assert verlinde_fusion(A1, (1,), (1,), 2) == F(2, ((0,), 1), ((2,), 1))
    for lam in level_weights(A2, 2):
        assert verlinde_fusion(A2, lam, (0, 0), 2) == FusionElement.basis(2, lam)


@pytest.mark.parametrize("name,ks", [("A1", range(1, 7)), ("A2", range(1, 5)), ("B2", range(1, 3)), ("G2", range(1, 3))])
def test_s_matrix_symmetric_unitary(name, ks):
    rs = build_root_system(name)
    for k in ks:
        sm = s_matrix(rs, k)
        assert sm.symmetry_defect() < 1e-9 and sm.unitarity_defect() < 1e-9


def test_char_value_examples(A1, A2):
    assert char_value(A2, freudenthal_weights(A2, (1, 1)), (0, 0)) == pytest.approx(8)
    # chi_2 vanishes at the special point of xi = 0 for A1 at k = 1
    p = special_points(A1, 1)[0]
    assert p == (Fraction(1, 6),)  # B_sharp(omega) = alpha^vee / 2, divided by ell = 3
    assert abs(char_value(A1, freudenthal_weights(A1, (2,)), p)) < 1e-12


@pytest.mark.parametrize("name,k", [("A1", 1), ("A1", 4), ("A2", 2), ("G2", 1)])
def test_fusion_ring_axioms(name, k):
    rs = build_root_system(name)
    lw = list(level_weights(rs, k))
    table = {(a, b): fusion(rs, a, b, k) for a in lw for b in lw}

    def times(x, c):
        out = FusionElement(k)
        for a, n in x.coeffs.items():
            out = out + table[a, c].scale(n)
        return out

    for a in lw:
        assert table[a, rs.zero] == FusionElement.basis(k, a)
        for b in lw:
            assert table[a, b] == table[b, a]
            assert all(c >= 0 for c in table[a, b].coeffs.values())
            assert project_decomposition(rs, tensor_decompose(rs, a, b), k) == table[a, b]
    rng = random.Random(7)
    for _ in range(50):
        a, b, c = (rng.choice(lw) for _ in range(3))
        assert times(table[a, b], c) == times(table[b, c], a)


def test_cache_round_trip_and_corruption(tmp_path, A2, caplog):
    cache = verlinde.set_cache_dir(tmp_path)
    ws = freudenthal_weights(A2, (2, 1))
    files = list(tmp_path.rglob("*.json"))
    assert len(files) == 1 and "v1" in files[0].parts and "A2" in files[0].parts
    stored = json.loads(files[0].read_text())
    assert stored["type"] == "formal" and stored["highest"] == [2, 1]

    fresh = FreudenthalCache(tmp_path)
    assert fresh.get(A2, (2, 1)).mults == ws.mults

    files[0].write_text("{ not json")
    again = FreudenthalCache(tmp_path)
    assert again.get(A2, (2, 1)).mults == ws.mults
    assert "corrupt" in caplog.text
    json.loads(files[0].read_text())  # overwritten with a valid file

    stored["support"][0][1] += 5  # well-formed but wrong
    files[0].write_text(json.dumps(stored))
    assert FreudenthalCache(tmp_path).get(A2, (2, 1)).mults == ws.mults
    assert cache.directory == tmp_path


def test_cache_concurrent_writers(tmp_path, A2):
    caches = [FreudenthalCache(tmp_path) for _ in range(4)]
    results = []

    def work(c):
        for lam in [(1, 1), (2, 0), (2, 2), (3, 1)]:
            results.append((lam, c.get(A2, lam).mults))

    threads = [threading.Thread(target=work, args=(c,)) for c in caches]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    for lam, mults in results:
        assert mults == freudenthal_weights(A2, lam).mults
    assert not list(tmp_path.rglob("*.tmp"))
