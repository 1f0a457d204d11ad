"""Brute-force reference computations.

Nothing in here calls the folding routines, so each function can serve as an
independent check on the corresponding fast path.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from .characters import FormalCharacter
from .rootsystem import RootSystem, Weight, b_flat, inner_product_coroots, pairing


def _translation_reach(rs: RootSystem, level: int, box: int, slack: int) -> int:
    ginv = rs.gram_coroot_inv
    bound = max(sum(abs(x) for x in row) for row in ginv)
    return int(bound * Fraction(box + slack, level)) + 1


def finite_weyl_elements(rs: RootSystem) -> list[tuple[tuple[tuple[int, ...], ...], int]]:
    """All Weyl group elements as integer matrices on weight coordinates, with det.

    Closure of the simple reflection matrices; use only for small groups.
    """
    r = rs.rank
    ident = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))

    def refl(i):
        # s_i(e_j) = e_j - delta_ij alpha_i; columns are images of basis weights
        return tuple(tuple(int(a == b) - (rs.cartan[i][a] if b == i else 0) for b in range(r)) for a in range(r))

    def mul(m1, m2):
        return tuple(tuple(sum(m1[a][c] * m2[c][b] for c in range(r)) for b in range(r)) for a in range(r))

    gens = [refl(i) for i in range(r)]
    seen = {ident: 1}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                p = mul(g, m)
                if p not in seen:
                    seen[p] = -seen[m]
                    nxt.append(p)
        frontier = nxt
    return sorted(seen.items())


def apply_matrix(m, xi) -> Weight:
    r = len(xi)
    return tuple(sum(m[a][b] * xi[b] for b in range(r)) for a in range(r))


def brute_orbit(rs: RootSystem, xi0: Weight, level: int, box: int) -> dict[Weight, int]:
    """{w . xi0 : parity} inside the box, from every (wbar, eta) with eta in a covering range."""
    shifted = tuple(x + 1 for x in xi0)
    images = [(apply_matrix(m, shifted), d) for m, d in finite_weyl_elements(rs)]
    slack = max(max(map(abs, v)) for v, _ in images) + 1
    reach = _translation_reach(rs, level, box, slack)
    out: dict[Weight, int] = {}
    for eta in itertools.product(range(-reach, reach + 1), repeat=rs.rank):
        t = tuple(level * x for x in b_flat(rs, eta))
        for v, d in images:
            w = tuple(a - 1 + b for a, b in zip(v, t))
            if max(map(abs, w)) <= box:
                assert out.get(w, d) == d, "orbit point reached with two parities"
                out[w] = d
    return out


def on_affine_wall(rs: RootSystem, xi: Weight, level: int) -> bool:
    """xi + rho is fixed by some affine reflection of the level action.

    The reflection in (alpha, n) fixes mu iff <mu, alpha^vee> = n * level * B(alpha^vee, alpha^vee)/2.
    """
    mu = tuple(x + 1 for x in xi)
    for cr in rs.positive_coroots:
        period = level * inner_product_coroots(rs, cr, cr) // 2
        if pairing(rs, mu, cr) % period == 0:
            return True
    return False


def in_open_alcove(rs: RootSystem, xi: Weight, level: int) -> bool:
    mu = tuple(x + 1 for x in xi)
    return all(m > 0 for m in mu) and pairing(rs, mu, rs.theta_coroot) < level


def dense_multiply(a: FormalCharacter, b: FormalCharacter) -> FormalCharacter:
    """Convolution on dense numpy arrays (independent of the dict path)."""
    if not a or not b:
        return FormalCharacter()
    pa = np.array(list(a.support.keys()))
    pb = np.array(list(b.support.keys()))
    lo_a, lo_b = pa.min(axis=0), pb.min(axis=0)
    shape_a = tuple(pa.max(axis=0) - lo_a + 1)
    shape_b = tuple(pb.max(axis=0) - lo_b + 1)
    da = np.zeros(shape_a, dtype=np.int64)
    db = np.zeros(shape_b, dtype=np.int64)
    for w, m in a.items():
        da[tuple(np.array(w) - lo_a)] = m
    for w, m in b.items():
        db[tuple(np.array(w) - lo_b)] = m
    out = np.zeros(tuple(x + y - 1 for x, y in zip(shape_a, shape_b)), dtype=np.int64)
    for idx in zip(*np.nonzero(da)):
        sl = tuple(slice(i, i + s) for i, s in zip(idx, shape_b))
        out[sl] += da[idx] * db
    lo = lo_a + lo_b
    return FormalCharacter({tuple(int(x) for x in np.array(i) + lo): int(out[i]) for i in zip(*np.nonzero(out))})


def peel_decomposition(rs: RootSystem, product: FormalCharacter, char_of) -> dict[Weight, int]:
    """Decompose a W-invariant character by repeatedly removing the highest dominant term."""
    rest = product
    out: dict[Weight, int] = {}
    while rest:
        top = max((w for w, m in rest.items() if all(x >= 0 for x in w)), key=lambda w: (rs.height(w), w))
        c = rest[top]
        out[top] = out.get(top, 0) + c
        rest = rest - char_of(top).scale(c)
    return dict(sorted(out.items()))


def verlinde_dimension(rs: RootSystem, k: int) -> int:
    """|Pi*_k| by direct enumeration of dominant weights with <lam, theta^vee> <= k."""
    marks = rs.theta_coroot
    return sum(
        1
        for lam in itertools.product(range(k + 1), repeat=rs.rank)
        if sum(a * c for a, c in zip(lam, marks)) <= k
    )
