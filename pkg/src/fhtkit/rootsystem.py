"""Exact root-system data for the simple Lie types A-G.

Weights are integer tuples in the fundamental-weight basis; elements of the
coroot lattice are integer tuples in the simple-coroot basis.  The inner
product is the basic one: short coroots (equivalently long roots) have
squared length 2.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

Weight = tuple[int, ...]
CorootElem = tuple[int, ...]

_VALID_RANKS = {
    "A": lambda r: r >= 1,
    "B": lambda r: r >= 2,
    "C": lambda r: r >= 2,
    "D": lambda r: r >= 3,
    "E": lambda r: 6 <= r <= 8,
    "F": lambda r: r == 4,
    "G": lambda r: r == 2,
}


class RootSystemError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class LieType:
    series: str
    rank: int

    def __post_init__(self):
        check = _VALID_RANKS.get(self.series)
        if check is None:
            raise RootSystemError(f"unknown Lie series {self.series!r}; expected one of A-G")
        if not isinstance(self.rank, int) or not check(self.rank):
            raise RootSystemError(f"{self.series}{self.rank} is not a valid simple type")

    def __str__(self) -> str:
        return f"{self.series}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> "LieType":
        m = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d+)\s*", str(text))
        if not m:
            raise RootSystemError(f"cannot parse Lie type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))


def _unit(n: int, i: int, c=1) -> list[Fraction]:
    v = [Fraction(0)] * n
    v[i] = Fraction(c)
    return v


def _euclidean_simple_roots(t: LieType) -> list[list[Fraction]]:
    """Bourbaki realizations of the simple roots."""
    s, r = t.series, t.rank
    half = Fraction(1, 2)
    if s == "A":
        n = r + 1
        return [[a - b for a, b in zip(_unit(n, i), _unit(n, i + 1))] for i in range(r)]
    chain = [[a - b for a, b in zip(_unit(r, i), _unit(r, i + 1))] for i in range(r - 1)]
    if s == "B":
        return chain + [_unit(r, r - 1)]
    if s == "C":
        return chain + [_unit(r, r - 1, 2)]
    if s == "D":
        return chain + [[a + b for a, b in zip(_unit(r, r - 2), _unit(r, r - 1))]]
    if s == "E":
        roots = [
            [half, -half, -half, -half, -half, -half, -half, half],
            [a + b for a, b in zip(_unit(8, 0), _unit(8, 1))],
        ]
        for i in range(6):
            roots.append([a - b for a, b in zip(_unit(8, i + 1), _unit(8, i))])
        return roots[:r]
    if s == "F":
        return [
            [0, 1, -1, 0],
            [0, 0, 1, -1],
            [0, 0, 0, 1],
            [half, -half, -half, -half],
        ]
    if s == "G":
        return [[1, -1, 0], [-2, 1, 1]]
    raise RootSystemError(f"unhandled series {s}")  # pragma: no cover


def _dot(u, v) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


def _inverse(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(i for i in range(col, n) if a[i][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [row[n:] for row in a]


def _det_int(m) -> int:
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for i in range(col + 1, n):
            f = a[i][col] / a[col][col]
            a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return int(det)


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Immutable root datum of one simple type.

    ``cartan[i][j] = <alpha_i, alpha_j^vee>`` so that row ``i`` is the simple
    root ``alpha_i`` written in fundamental-weight coordinates.
    """

    lie_type: LieType
    cartan: tuple[tuple[int, ...], ...]
    simple_roots: tuple[Weight, ...]
    positive_roots: tuple[Weight, ...]
    positive_roots_simple: tuple[tuple[int, ...], ...]
    positive_coroots: tuple[CorootElem, ...]
    rho: Weight
    theta: Weight
    theta_coroot: CorootElem
    h_dual: int
    gram_weight: tuple[tuple[Fraction, ...], ...]
    gram_coroot: tuple[tuple[int, ...], ...]
    gram_coroot_inv: tuple[tuple[Fraction, ...], ...]
    cartan_inv: tuple[tuple[Fraction, ...], ...]

    @property
    def rank(self) -> int:
        return self.lie_type.rank

    @property
    def name(self) -> str:
        return str(self.lie_type)

    @property
    def zero(self) -> Weight:
        return (0,) * self.rank

    @property
    def lattice_index(self) -> int:
        """Index ``[Pi* : B_flat(Pi)] = det(gram_coroot)``."""
        return _det_int(self.gram_coroot)

    def __repr__(self) -> str:
        return f"RootSystem({self.name})"

    def root_length_sq(self, root: Weight) -> Fraction:
        return inner_product_weights(self, root, root)

    def coroot_of(self, root: Weight) -> CorootElem:
        """alpha^vee = 2 B_sharp(alpha) / B(alpha, alpha), in coroot coordinates."""
        n = self.root_length_sq(root)
        vec = [2 * sum(self.gram_coroot_inv[i][j] * root[j] for j in range(self.rank)) / n for i in range(self.rank)]
        assert all(x.denominator == 1 for x in vec)
        return tuple(int(x) for x in vec)

    def to_simple_root_coords(self, xi: Weight) -> tuple[Fraction, ...]:
        r = self.rank
        return tuple(sum((xi[i] * self.cartan_inv[i][j] for i in range(r)), Fraction(0)) for j in range(r))

    def height(self, xi: Weight) -> Fraction:
        return sum(self.to_simple_root_coords(xi), Fraction(0))


def _check_dims(rs: RootSystem, *vecs) -> None:
    for v in vecs:
        if len(v) != rs.rank:
            raise ValueError(f"expected a vector of length {rs.rank} for {rs.name}, got {tuple(v)!r}")


def _positive_roots_by_closure(cartan) -> list[tuple[int, ...]]:
    """Positive roots in simple-root coordinates via the root-string rule."""
    r = len(cartan)
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(r):
                # <beta, alpha_i^vee>
                pair = sum(beta[j] * cartan[j][i] for j in range(r))
                q = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        q += 1
                    else:
                        break
                if q - pair > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        layer = nxt
    return sorted(roots, key=lambda b: (sum(b), b))


@lru_cache(maxsize=None)
def _build(t: LieType) -> RootSystem:
    eu = _euclidean_simple_roots(t)
    r = t.rank
    long_sq = max(_dot(a, a) for a in eu)
    scale = Fraction(2) / long_sq
    form = [[_dot(a, b) * scale for b in eu] for a in eu]
    cartan = tuple(tuple(int(2 * form[i][j] / form[j][j]) for j in range(r)) for i in range(r))
    gram_coroot_f = [[4 * form[i][j] / (form[i][i] * form[j][j]) for j in range(r)] for i in range(r)]
    assert all(x.denominator == 1 for row in gram_coroot_f for x in row)
    gram_coroot = tuple(tuple(int(x) for x in row) for row in gram_coroot_f)
    gram_coroot_inv = tuple(tuple(row) for row in _inverse(gram_coroot_f))
    cartan_inv = tuple(tuple(row) for row in _inverse([[Fraction(x) for x in row] for row in cartan]))

    pos_simple = _positive_roots_by_closure(cartan)
    pos = tuple(tuple(sum(b[i] * cartan[i][j] for i in range(r)) for j in range(r)) for b in pos_simple)
    theta_simple = max(pos_simple, key=sum)
    theta = pos[pos_simple.index(theta_simple)]

    rs = RootSystem(
        lie_type=t,
        cartan=cartan,
        simple_roots=tuple(cartan),
        positive_roots=pos,
        positive_roots_simple=tuple(pos_simple),
        positive_coroots=(),
        rho=(1,) * r,
        theta=theta,
        theta_coroot=(),
        h_dual=0,
        gram_weight=gram_coroot_inv,
        gram_coroot=gram_coroot,
        gram_coroot_inv=gram_coroot_inv,
        cartan_inv=cartan_inv,
    )
    coroots = tuple(rs.coroot_of(a) for a in pos)
    theta_coroot = rs.coroot_of(theta)
    object.__setattr__(rs, "positive_coroots", coroots)
    object.__setattr__(rs, "theta_coroot", theta_coroot)
    object.__setattr__(rs, "h_dual", 1 + pairing(rs, rs.rho, theta_coroot))
    return rs


def build_root_system(t: LieType | str) -> RootSystem:
    """Construct (and memoize) the root system of type ``t``, e.g. ``"A2"``."""
    if not isinstance(t, LieType):
        t = LieType.parse(t)
    return _build(t)


def pairing(rs: RootSystem, xi: Weight, eta: CorootElem) -> int:
    """Canonical pairing <xi, eta> of Pi* with Pi."""
    _check_dims(rs, xi, eta)
    return sum(a * b for a, b in zip(xi, eta))


def inner_product_weights(rs: RootSystem, xi, mu) -> Fraction:
    """B(xi, mu) for weights (rational coordinates allowed)."""
    _check_dims(rs, xi, mu)
    g = rs.gram_weight
    r = rs.rank
    return sum((xi[i] * g[i][j] * mu[j] for i in range(r) for j in range(r) if xi[i] and mu[j]), Fraction(0))


def inner_product_coroots(rs: RootSystem, eta1: CorootElem, eta2: CorootElem) -> int:
    _check_dims(rs, eta1, eta2)
    g = rs.gram_coroot
    r = rs.rank
    return sum(eta1[i] * g[i][j] * eta2[j] for i in range(r) for j in range(r))


def b_flat(rs: RootSystem, eta: CorootElem) -> Weight:
    """The weight B_flat(eta) = B(eta, -)."""
    _check_dims(rs, eta)
    g = rs.gram_coroot
    r = rs.rank
    return tuple(sum(eta[i] * g[i][j] for i in range(r)) for j in range(r))


def b_sharp(rs: RootSystem, xi) -> tuple[Fraction, ...]:
    """Inverse of b_flat: a weight as a rational vector of t in coroot coordinates."""
    _check_dims(rs, xi)
    g = rs.gram_coroot_inv
    r = rs.rank
    return tuple(sum((g[j][i] * xi[j] for j in range(r)), Fraction(0)) for i in range(r))


def positive_root_count(t: LieType) -> int:
    s, r = t.series, t.rank
    return {
        "A": r * (r + 1) // 2,
        "B": r * r,
        "C": r * r,
        "D": r * (r - 1),
        "E": {6: 36, 7: 63, 8: 120}.get(r, 0),
        "F": 24,
        "G": 6,
    }[s]


def all_types(max_rank: int = 8) -> list[LieType]:
    out = []
    for s in "ABCDEFG":
        for r in range(1, max_rank + 1):
            try:
                out.append(LieType(s, r))
            except RootSystemError:
                pass
    return out
