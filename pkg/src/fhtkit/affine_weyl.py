"""Finite and affine Weyl group actions, and alcove folding with sign.

Walls are numbered as in the affine Dynkin diagram: wall 0 is the affine
wall ``<mu, theta^vee> = level``, walls ``1..rank`` are the simple walls
``<mu, alpha_i^vee> = 0``.  Only the parity of l(w) is ever tracked.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .rootsystem import CorootElem, RootSystem, Weight, b_flat

Chooser = Callable[[Sequence[int]], int]


class FoldGuardError(RuntimeError):
    """Folding did not terminate within its iteration cap (an internal bug)."""


@dataclass(frozen=True)
class FoldOutcome:
    kind: str  # "interior" | "boundary"
    weight: Optional[Weight] = None
    sign: int = 0

    @property
    def is_interior(self) -> bool:
        return self.kind == "interior"

    @property
    def is_boundary(self) -> bool:
        return self.kind == "boundary"

    @classmethod
    def interior(cls, weight: Weight, sign: int) -> "FoldOutcome":
        return cls("interior", tuple(weight), sign)

    @classmethod
    def boundary(cls) -> "FoldOutcome":
        return cls("boundary")

    def to_dict(self) -> dict:
        if self.is_boundary:
            return {"kind": "boundary"}
        return {"kind": "interior", "weight": list(self.weight), "sign": self.sign}


def reflect(rs: RootSystem, mu: Sequence[int], i: int) -> list[int]:
    """Simple reflection s_i (0-based simple index) on a weight."""
    c = mu[i]
    if c == 0:
        return list(mu)
    a = rs.cartan[i]
    return [m - c * x for m, x in zip(mu, a)]


def theta_pairing(rs: RootSystem, mu: Sequence[int]) -> int:
    return sum(m * c for m, c in zip(mu, rs.theta_coroot))


def affine_reflect(rs: RootSystem, mu: Sequence[int], level: int) -> list[int]:
    """mu -> s_theta(mu) + level * theta (unshifted level action)."""
    c = theta_pairing(rs, mu) - level
    return [m - c * x for m, x in zip(mu, rs.theta)]


def _fold_cap(rs: RootSystem, xi: Sequence[int], level: int) -> int:
    return 10 * (sum(abs(x) for x in xi) + rs.rank + 1) * (level + len(rs.positive_roots) * rs.h_dual)


def affine_fold(rs: RootSystem, xi: Sequence[int], level: int, choose: Optional[Chooser] = None) -> FoldOutcome:
    """Fold ``xi`` into the interior of the rho-shifted level-``level`` alcove.

    Returns ``Interior(w0, sign)`` with ``xi = w . w0`` and ``sign = (-1)^l(w)``,
    or ``Boundary`` when ``xi + rho`` is fixed by an affine reflection.
    """
    if level < 1:
        raise ValueError("level must be >= 1")
    r = rs.rank
    mu = [x + 1 for x in xi]
    sign = 1
    cap = _fold_cap(rs, xi, level)
    for _ in range(cap):
        if choose is None:
            if theta_pairing(rs, mu) > level:
                mu = affine_reflect(rs, mu, level)
                sign = -sign
                continue
            i = next((i for i in range(r) if mu[i] < 0), None)
            if i is None:
                break
            mu = reflect(rs, mu, i)
            sign = -sign
        else:
            walls = [0] if theta_pairing(rs, mu) > level else []
            walls += [i + 1 for i in range(r) if mu[i] < 0]
            if not walls:
                break
            w = choose(walls)
            mu = affine_reflect(rs, mu, level) if w == 0 else reflect(rs, mu, w - 1)
            sign = -sign
    else:
        raise FoldGuardError(f"affine fold of {tuple(xi)} at level {level} exceeded {cap} reflections")
    if any(m == 0 for m in mu) or theta_pairing(rs, mu) == level:
        return FoldOutcome.boundary()
    return FoldOutcome.interior(tuple(m - 1 for m in mu), sign)


def finite_fold(rs: RootSystem, xi: Sequence[int], choose: Optional[Chooser] = None) -> FoldOutcome:
    """rho-shifted fold by the finite Weyl group into the dominant chamber."""
    r = rs.rank
    mu = [x + 1 for x in xi]
    sign = 1
    cap = _fold_cap(rs, xi, 1)
    for _ in range(cap):
        walls = [i for i in range(r) if mu[i] < 0]
        if not walls:
            break
        i = walls[0] if choose is None else choose([w + 1 for w in walls]) - 1
        mu = reflect(rs, mu, i)
        sign = -sign
    else:
        raise FoldGuardError(f"finite fold of {tuple(xi)} exceeded {cap} reflections")
    if any(m == 0 for m in mu):
        return FoldOutcome.boundary()
    return FoldOutcome.interior(tuple(m - 1 for m in mu), sign)


def dominant_conjugate(rs: RootSystem, mu: Sequence[int]) -> Weight:
    """Unshifted finite-Weyl fold into the closed dominant chamber."""
    mu = list(mu)
    r = rs.rank
    while True:
        i = next((i for i in range(r) if mu[i] < 0), None)
        if i is None:
            return tuple(mu)
        mu = reflect(rs, mu, i)


def interior_weights(rs: RootSystem, level: int) -> list[Weight]:
    """Weights strictly inside the rho-shifted level-``level`` alcove, graded-lex order."""
    bound = level - rs.h_dual
    if bound < 0:
        return []
    marks = rs.theta_coroot
    out = []
    for lam in itertools.product(*(range(bound // c + 1) for c in marks)):
        if sum(a * c for a, c in zip(lam, marks)) <= bound:
            out.append(tuple(lam))
    out.sort(key=lambda w: (sum(w), tuple(-x for x in w)))
    return out


# ---------------------------------------------------------------------------
# explicit elements of W_aff = W x| Pi


def weyl_act(rs: RootSystem, word: Sequence[int], mu: Sequence[int]) -> Weight:
    """Apply s_{word[0]} ... s_{word[-1]} (rightmost first) to a weight."""
    mu = list(mu)
    for i in reversed(word):
        mu = reflect(rs, mu, i)
    return tuple(mu)


def weyl_act_coroot(rs: RootSystem, word: Sequence[int], eta: Sequence[int]) -> CorootElem:
    """Same action on Pi: s_i(eta) = eta - <alpha_i, eta> alpha_i^vee."""
    eta = list(eta)
    r = rs.rank
    for i in reversed(word):
        c = sum(rs.cartan[i][j] * eta[j] for j in range(r))
        eta[i] -= c
    return tuple(eta)


def reduced_word(rs: RootSystem, word: Sequence[int]) -> tuple[int, ...]:
    """A reduced word for the Weyl element represented by ``word``.

    If folding w(rho) back to rho applies s_{i1}, ..., s_{im} in turn, then
    w = s_{i1} ... s_{im}, and m = l(w).
    """
    mu = list(weyl_act(rs, word, rs.rho))
    steps = []
    while True:
        i = next((i for i in range(rs.rank) if mu[i] < 0), None)
        if i is None:
            break
        mu = reflect(rs, mu, i)
        steps.append(i)
    return tuple(steps)


@dataclass(frozen=True)
class AffineWeylElem:
    """(wbar, eta) acting by xi -> wbar(xi + rho) - rho + level * B_flat(eta)."""

    wbar: tuple[int, ...]
    eta: CorootElem
    parity: int

    @classmethod
    def identity(cls, rs: RootSystem) -> "AffineWeylElem":
        return cls((), rs.zero, 1)

    @classmethod
    def translation(cls, eta: CorootElem) -> "AffineWeylElem":
        return cls((), tuple(eta), 1)


def make_affine_elem(rs: RootSystem, word: Sequence[int], eta: CorootElem) -> AffineWeylElem:
    red = reduced_word(rs, word)
    return AffineWeylElem(red, tuple(eta), -1 if len(red) % 2 else 1)


def compose(rs: RootSystem, w1: AffineWeylElem, w2: AffineWeylElem) -> AffineWeylElem:
    """(w1, eta1)(w2, eta2) = (w1 w2, eta1 + w1(eta2))."""
    moved = weyl_act_coroot(rs, w1.wbar, w2.eta)
    eta = tuple(a + b for a, b in zip(w1.eta, moved))
    red = reduced_word(rs, w1.wbar + w2.wbar)
    return AffineWeylElem(red, eta, w1.parity * w2.parity)


def affine_generators(rs: RootSystem) -> list[AffineWeylElem]:
    """[s_0, s_1, ..., s_r]; s_0 is the reflection in the affine wall."""
    s_theta = reduced_word(rs, _reflection_word(rs, rs.theta))
    gens = [AffineWeylElem(s_theta, rs.theta_coroot, -1)]
    gens += [AffineWeylElem((i,), rs.zero, -1) for i in range(rs.rank)]
    return gens


def _reflection_word(rs: RootSystem, root: Weight) -> tuple[int, ...]:
    # s_beta = u s_i u^{-1} where beta = u(alpha_i)
    target = tuple(root)
    for i in range(rs.rank):
        frontier = [((), rs.simple_roots[i])]
        seen = {rs.simple_roots[i]}
        while frontier:
            nxt = []
            for word, b in frontier:
                if b == target:
                    return word + (i,) + tuple(reversed(word))
                for j in range(rs.rank):
                    c = reflect(rs, b, j)
                    tc = tuple(c)
                    if tc not in seen:
                        seen.add(tc)
                        nxt.append(((j,) + word, tc))
            frontier = nxt
    raise ValueError(f"{root} is not a root")  # pragma: no cover


def random_affine_elem(rs: RootSystem, rng: random.Random, max_len: int = 6) -> AffineWeylElem:
    gens = affine_generators(rs)
    w = AffineWeylElem.identity(rs)
    for _ in range(rng.randint(0, max_len)):
        w = compose(rs, w, rng.choice(gens))
    return w


def shifted_action(rs: RootSystem, w: AffineWeylElem, xi: Sequence[int], level: int) -> Weight:
    mu = weyl_act(rs, w.wbar, [x + 1 for x in xi])
    shift = b_flat(rs, w.eta)
    return tuple(m - 1 + level * s for m, s in zip(mu, shift))


def enumerate_orbit(rs: RootSystem, xi0: Sequence[int], level: int, box: int) -> list[tuple[Weight, int]]:
    """All (w . xi0, parity(w)) with every coordinate in [-box, box], sorted by weight."""
    xi0 = tuple(xi0)
    fo = affine_fold(rs, xi0, level)
    if not (fo.is_interior and fo.weight == xi0 and fo.sign == 1):
        raise ValueError(f"{xi0} is not strictly interior at level {level}")
    out = []
    for xi in itertools.product(range(-box, box + 1), repeat=rs.rank):
        f = affine_fold(rs, xi, level)
        if f.is_interior and f.weight == xi0:
            out.append((xi, f.sign))
    return out


def signed_weyl_orbit(rs: RootSystem, mu: Sequence[int]) -> list[tuple[Weight, int]]:
    """[(wbar(mu), det wbar)] over the finite Weyl group, for mu strictly dominant.

    Since mu is regular its stabilizer is trivial, so orbit points and Weyl
    elements correspond and breadth-first distance gives the length parity.
    """
    mu = tuple(mu)
    if any(m <= 0 for m in mu):
        raise ValueError(f"{mu} is not strictly dominant")
    seen = {mu: 1}
    frontier = [mu]
    while frontier:
        nxt = []
        for v in frontier:
            s = seen[v]
            for i in range(rs.rank):
                u = tuple(reflect(rs, v, i))
                if u not in seen:
                    seen[u] = -s
                    nxt.append(u)
        frontier = nxt
    return sorted(seen.items())


def weyl_orbit(rs: RootSystem, mu: Sequence[int]) -> list[Weight]:
    """Unshifted finite Weyl orbit of an arbitrary weight."""
    mu = tuple(mu)
    seen = {mu}
    frontier = [mu]
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(rs.rank):
                u = tuple(reflect(rs, v, i))
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return sorted(seen)
