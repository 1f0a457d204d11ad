"""Formal characters of T: finite, level-periodic and W_aff-alternating.

Infinite characters never appear as such; they are always handled as an
explicit (window, truncation) pair, the window being the box
``max|xi_i| <= window`` in fundamental-weight coordinates.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form

from .affine_weyl import affine_fold, interior_weights
from .rootsystem import RootSystem, Weight, b_flat, build_root_system


class InconsistencyError(ValueError):
    """A windowed character is not alternating; ``weight`` is the first offender."""

    def __init__(self, message: str, weight: Weight | None = None):
        super().__init__(message)
        self.weight = weight


def box(rank: int, window: int) -> Iterable[Weight]:
    return itertools.product(range(-window, window + 1), repeat=rank)


class FormalCharacter:
    """Finitely supported multiplicity function Pi* -> Z."""

    __slots__ = ("_support",)

    def __init__(self, support: Mapping[Weight, int] | Iterable[tuple[Weight, int]] = ()):
        items = support.items() if isinstance(support, Mapping) else support
        acc: dict[Weight, int] = {}
        for w, m in items:
            w = tuple(int(x) for x in w)
            acc[w] = acc.get(w, 0) + int(m)
        self._support = {w: m for w, m in acc.items() if m}

    @classmethod
    def monomial(cls, xi: Weight, mult: int = 1) -> "FormalCharacter":
        return cls({tuple(xi): mult})

    @property
    def support(self) -> dict[Weight, int]:
        return dict(self._support)

    def items(self):
        return self._support.items()

    def __getitem__(self, xi: Weight) -> int:
        return self._support.get(tuple(xi), 0)

    def get(self, xi: Weight, default: int = 0) -> int:
        return self._support.get(tuple(xi), default)

    def __len__(self) -> int:
        return len(self._support)

    def __bool__(self) -> bool:
        return bool(self._support)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalCharacter):
            return NotImplemented
        return self._support == other._support

    def __hash__(self):
        return hash(frozenset(self._support.items()))

    def __repr__(self) -> str:
        terms = " + ".join(f"{m}*e{list(w)}" for w, m in sorted(self._support.items()))
        return f"FormalCharacter({terms or '0'})"

    def __add__(self, other: "FormalCharacter") -> "FormalCharacter":
        out = dict(self._support)
        for w, m in other._support.items():
            out[w] = out.get(w, 0) + m
        return FormalCharacter(out)

    def __neg__(self) -> "FormalCharacter":
        return FormalCharacter({w: -m for w, m in self._support.items()})

    def __sub__(self, other: "FormalCharacter") -> "FormalCharacter":
        return self + (-other)

    def scale(self, c: int) -> "FormalCharacter":
        return FormalCharacter({w: c * m for w, m in self._support.items()})

    def shift(self, by: Weight) -> "FormalCharacter":
        return FormalCharacter({tuple(a + b for a, b in zip(w, by)): m for w, m in self._support.items()})

    def __mul__(self, other: "FormalCharacter") -> "FormalCharacter":
        return char_multiply(self, other)

    def truncate(self, window: int) -> "FormalCharacter":
        return FormalCharacter({w: m for w, m in self._support.items() if max(map(abs, w), default=0) <= window})

    def radius(self) -> int:
        return max((max(map(abs, w), default=0) for w in self._support), default=0)

    def to_json(self) -> dict:
        return {"type": "formal", "support": [[list(w), m] for w, m in sorted(self._support.items())]}

    @classmethod
    def from_json(cls, data: dict) -> "FormalCharacter":
        if data.get("type") != "formal":
            raise ValueError("not a formal character")
        return cls((tuple(w), m) for w, m in data["support"])


def char_multiply(a: FormalCharacter, b: FormalCharacter) -> FormalCharacter:
    """Convolution of multiplicity functions."""
    out: dict[Weight, int] = {}
    for w1, m1 in a.items():
        for w2, m2 in b.items():
            w = tuple(x + y for x, y in zip(w1, w2))
            out[w] = out.get(w, 0) + m1 * m2
    return FormalCharacter(out)


# ---------------------------------------------------------------------------
# cosets of Pi*/ level*Pi


@dataclass(frozen=True)
class CosetSystem:
    """Canonical representatives for Pi* / level * B_flat(Pi).

    The sublattice is put in (upper triangular, column) Hermite normal form;
    reducing coordinates from the last to the first lands every weight in the
    box ``0 <= x_j < H[j][j]``.
    """

    rs: RootSystem
    level: int
    hnf: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, rs: RootSystem, level: int) -> "CosetSystem":
        return _coset_system(rs.lie_type, level)

    @property
    def size(self) -> int:
        n = 1
        for j in range(self.rs.rank):
            n *= self.hnf[j][j]
        return n

    def reduce(self, xi: Weight) -> Weight:
        h = self.hnf
        x = list(xi)
        for j in reversed(range(len(x))):
            q = x[j] // h[j][j]
            if q:
                for i in range(j + 1):
                    x[i] -= q * h[i][j]
        return tuple(x)

    def transversal(self) -> list[Weight]:
        return [tuple(x) for x in itertools.product(*(range(self.hnf[j][j]) for j in range(self.rs.rank)))]

    def translation_of(self, xi: Weight, rep: Weight) -> tuple[int, ...]:
        """The eta with xi = rep + level * B_flat(eta)."""
        diff = [a - b for a, b in zip(xi, rep)]
        g = self.rs.gram_coroot_inv
        r = self.rs.rank
        eta = [sum((g[i][j] * diff[j] for j in range(r)), Fraction(0)) / self.level for i in range(r)]
        if any(e.denominator != 1 for e in eta):
            raise ValueError(f"{xi} and {rep} are not in the same coset")
        return tuple(int(e) for e in eta)


@lru_cache(maxsize=None)
def _coset_system(lie_type, level: int) -> CosetSystem:
    if level == 0:
        raise ValueError("level must be nonzero")
    rs = build_root_system(lie_type)
    gen = Matrix(rs.gram_coroot) * abs(level)
    h = hermite_normal_form(gen)
    r = rs.rank
    hnf = tuple(tuple(int(h[i, j]) for j in range(r)) for i in range(r))
    assert all(hnf[i][j] == 0 for i in range(r) for j in range(i)), "expected upper triangular HNF"
    assert all(hnf[j][j] > 0 for j in range(r))
    # same lattice: columns of H are integer combinations of columns of gen, and equal covolume
    coeffs = gen.inv() * h
    assert all(c.is_integer for c in coeffs)
    assert abs(gen.det()) == abs(h.det())
    return CosetSystem(rs, level, hnf)


@dataclass(frozen=True, eq=False)
class PeriodicCharacter:
    """A level*Pi-periodic formal character, stored on the canonical transversal."""

    rs: RootSystem
    level: int
    coset_mults: dict = field(default_factory=dict)

    def __post_init__(self):
        cs = CosetSystem.of(self.rs, self.level)
        full = {rep: 0 for rep in cs.transversal()}
        for rep, m in self.coset_mults.items():
            rep = tuple(rep)
            if rep not in full:
                raise ValueError(f"{rep} is not a canonical coset representative")
            full[rep] += m
        object.__setattr__(self, "coset_mults", full)

    def __call__(self, xi: Weight) -> int:
        return self.coset_mults[CosetSystem.of(self.rs, self.level).reduce(xi)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PeriodicCharacter):
            return NotImplemented
        return (self.rs.lie_type, self.level, self.coset_mults) == (other.rs.lie_type, other.level, other.coset_mults)

    def __add__(self, other: "PeriodicCharacter") -> "PeriodicCharacter":
        return PeriodicCharacter(self.rs, self.level, {r: m + other.coset_mults[r] for r, m in self.coset_mults.items()})

    def __repr__(self) -> str:
        nz = {r: m for r, m in self.coset_mults.items() if m}
        return f"PeriodicCharacter({self.rs.name}, level={self.level}, {nz})"

    def to_json(self) -> dict:
        return {
            "type": "periodic",
            "lie_type": self.rs.name,
            "level": self.level,
            "cosets": [[list(r), m] for r, m in sorted(self.coset_mults.items())],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PeriodicCharacter":
        if data.get("type") != "periodic":
            raise ValueError("not a periodic character")
        rs = build_root_system(data["lie_type"])
        return cls(rs, data["level"], {tuple(r): m for r, m in data["cosets"]})


def periodize(rs: RootSystem, fc: FormalCharacter, level: int) -> PeriodicCharacter:
    cs = CosetSystem.of(rs, level)
    acc: dict[Weight, int] = {}
    for w, m in fc.items():
        r = cs.reduce(w)
        acc[r] = acc.get(r, 0) + m
    return PeriodicCharacter(rs, level, acc)


def coset_indicator(rs: RootSystem, xi: Weight, level: int) -> PeriodicCharacter:
    rep = CosetSystem.of(rs, level).reduce(tuple(xi))
    return PeriodicCharacter(rs, level, {rep: 1})


def lattice_shift(rs: RootSystem, eta, level: int) -> Weight:
    return tuple(level * x for x in b_flat(rs, eta))


# ---------------------------------------------------------------------------
# alternating characters


@dataclass(frozen=True, eq=False)
class AlternatingCharacter:
    """A W_aff-alternating character, stored by its values on the alcove interior."""

    rs: RootSystem
    level: int
    alcove_mults: dict = field(default_factory=dict)

    def __post_init__(self):
        domain = interior_weights(self.rs, self.level)
        full = {w: 0 for w in domain}
        for w, m in self.alcove_mults.items():
            w = tuple(w)
            if w not in full:
                raise ValueError(f"{w} is not interior at level {self.level}")
            full[w] += m
        object.__setattr__(self, "alcove_mults", full)

    @classmethod
    def delta(cls, rs: RootSystem, level: int, lam: Weight) -> "AlternatingCharacter":
        return cls(rs, level, {tuple(lam): 1})

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlternatingCharacter):
            return NotImplemented
        return (self.rs.lie_type, self.level, self.alcove_mults) == (other.rs.lie_type, other.level, other.alcove_mults)

    def __repr__(self) -> str:
        nz = {w: m for w, m in self.alcove_mults.items() if m}
        return f"AlternatingCharacter({self.rs.name}, level={self.level}, {nz})"

    def window(self, window: int) -> FormalCharacter:
        """Truncation of the alternating extension to the window box."""
        return FormalCharacter({xi: alternating_extend(self, xi) for xi in box(self.rs.rank, window)})

    def to_json(self) -> dict:
        return {
            "type": "alternating",
            "lie_type": self.rs.name,
            "level": self.level,
            "alcove": [[list(w), m] for w, m in sorted(self.alcove_mults.items())],
        }

    @classmethod
    def from_json(cls, data: dict) -> "AlternatingCharacter":
        if data.get("type") != "alternating":
            raise ValueError("not an alternating character")
        rs = build_root_system(data["lie_type"])
        return cls(rs, data["level"], {tuple(w): m for w, m in data["alcove"]})


def alternating_extend(ac: AlternatingCharacter, xi: Weight) -> int:
    fo = affine_fold(ac.rs, xi, ac.level)
    if fo.is_boundary:
        return 0
    return fo.sign * ac.alcove_mults[fo.weight]


def restrict_to_alcove(rs: RootSystem, fc: FormalCharacter, level: int, window: int) -> AlternatingCharacter:
    """Recover the alternating character whose window truncation is ``fc``."""
    if fc.radius() > window:
        raise ValueError(f"character has support outside the window {window}")
    domain = interior_weights(rs, level)
    if any(max(w, default=0) > window for w in domain):
        raise ValueError(f"window {window} does not contain the alcove interior at level {level}")
    ac = AlternatingCharacter(rs, level, {w: fc.get(w) for w in domain})
    for xi in box(rs.rank, window):
        expected = alternating_extend(ac, xi)
        if fc.get(xi) != expected:
            raise InconsistencyError(
                f"not alternating at {xi}: multiplicity {fc.get(xi)}, alternation requires {expected}", xi
            )
    return ac


def dumps(obj) -> str:
    """Canonical JSON text for any character type."""
    return json.dumps(obj.to_json(), sort_keys=True, separators=(",", ":"))


def loads(text: str):
    data = json.loads(text)
    kind = data.get("type")
    cls = {"formal": FormalCharacter, "periodic": PeriodicCharacter, "alternating": AlternatingCharacter}.get(kind)
    if cls is None:
        raise ValueError(f"unknown character type {kind!r}")
    return cls.from_json(data)
