"""The groups T x| Pi^bas and T x| Pi^triv with exact rational phases.

U(1) is modelled as Q/Z: a phase ``z`` stands for exp(2 pi i z).  A torus
element is a rational vector of t in simple-coroot coordinates taken mod 1,
so that ``t^xi = exp(2 pi i <xi, x>)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rootsystem import CorootElem, RootSystem, b_flat, b_sharp


def _mod1(x) -> Fraction:
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class TorusElem:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(_mod1(c) for c in self.coords))

    def __mul__(self, other: "TorusElem") -> "TorusElem":
        return TorusElem(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def inverse(self) -> "TorusElem":
        return TorusElem(tuple(-a for a in self.coords))

    @classmethod
    def identity(cls, rank: int) -> "TorusElem":
        return cls((Fraction(0),) * rank)


@dataclass(frozen=True)
class Phase:
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", _mod1(self.value))

    def __mul__(self, other: "Phase") -> "Phase":
        return Phase(self.value + other.value)

    def inverse(self) -> "Phase":
        return Phase(-self.value)


@dataclass(frozen=True)
class GroupElem:
    """An element (t, eta, z) of T x| Pi^tau at a fixed level."""

    t: TorusElem
    eta: CorootElem
    z: Phase
    level: int = 1

    def __post_init__(self):
        if self.level == 0:
            raise ValueError("level must be nonzero")
        object.__setattr__(self, "eta", tuple(int(e) for e in self.eta))

    @classmethod
    def make(cls, t, eta, z=0, level: int = 1) -> "GroupElem":
        return cls(TorusElem(tuple(Fraction(c) for c in t)), tuple(eta), Phase(Fraction(z)), level)

    @classmethod
    def identity(cls, rank: int, level: int = 1) -> "GroupElem":
        return cls(TorusElem.identity(rank), (0,) * rank, Phase(Fraction(0)), level)


@dataclass(frozen=True)
class EpsilonForm:
    """Strictly lower-triangular part of the coroot Gram matrix."""

    matrix: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, rs: RootSystem) -> "EpsilonForm":
        g = rs.gram_coroot
        r = rs.rank
        return cls(tuple(tuple(g[i][j] if i > j else 0 for j in range(r)) for i in range(r)))

    def __call__(self, eta1: CorootElem, eta2: CorootElem) -> int:
        m = self.matrix
        r = len(m)
        return sum(eta1[i] * m[i][j] * eta2[j] for i in range(r) for j in range(i))


def kappa(rs: RootSystem, eta: CorootElem, t: TorusElem, level: int = 1) -> Phase:
    """kappa^level_eta(t) = t^{-level * B_flat(eta)}."""
    bf = b_flat(rs, eta)
    return Phase(-level * sum((a * c for a, c in zip(bf, t.coords)), Fraction(0)))


def epsilon(rs: RootSystem, eta1: CorootElem, eta2: CorootElem) -> int:
    return EpsilonForm.of(rs)(eta1, eta2)


def sigma(rs: RootSystem, eta1: CorootElem, eta2: CorootElem) -> int:
    return -1 if epsilon(rs, eta1, eta2) % 2 else 1


def sigma_phase(rs: RootSystem, eta1: CorootElem, eta2: CorootElem, level: int = 1) -> Phase:
    """sigma^level as an element of Q/Z."""
    return Phase(Fraction(level * epsilon(rs, eta1, eta2), 2))


def multiply(rs: RootSystem, g1: GroupElem, g2: GroupElem, variant: str = "bas") -> GroupElem:
    if g1.level != g2.level:
        raise ValueError(f"level mismatch: {g1.level} vs {g2.level}")
    if variant not in ("bas", "triv"):
        raise ValueError(f"unknown variant {variant!r}")
    level = g1.level
    z = kappa(rs, g1.eta, g2.t, level) * g1.z * g2.z
    if variant == "bas":
        z = z * sigma_phase(rs, g1.eta, g2.eta, level)
    eta = tuple(a + b for a, b in zip(g1.eta, g2.eta))
    return GroupElem(g1.t * g2.t, eta, z, level)


def inverse(rs: RootSystem, g: GroupElem, variant: str = "bas") -> GroupElem:
    """Two-sided inverse, solved from the group law."""
    t_inv = g.t.inverse()
    eta_inv = tuple(-e for e in g.eta)
    probe = multiply(rs, g, GroupElem(t_inv, eta_inv, Phase(Fraction(0)), g.level), variant)
    return GroupElem(t_inv, eta_inv, probe.z.inverse(), g.level)


def eta_epsilon(rs: RootSystem, eta: CorootElem) -> TorusElem:
    """exp of (1/2) B_sharp(epsilon(-, eta)) as a torus element."""
    m = EpsilonForm.of(rs).matrix
    r = rs.rank
    contraction = tuple(sum(m[i][j] * eta[j] for j in range(r)) for i in range(r))
    return TorusElem(tuple(c / 2 for c in b_sharp(rs, contraction)))


def psi(rs: RootSystem, g: GroupElem) -> GroupElem:
    """Psi(t, eta, z) = (t exp(eta_eps), eta, z): bas-variant to triv-variant."""
    return GroupElem(g.t * eta_epsilon(rs, g.eta), g.eta, g.z, g.level)


def cocycle(rs: RootSystem, g1: GroupElem, g2: GroupElem, variant: str = "bas") -> Phase:
    """The U(1)-valued 2-cocycle on T x Pi defining the group law."""
    c = kappa(rs, g1.eta, g2.t, g1.level)
    if variant == "bas":
        c = c * sigma_phase(rs, g1.eta, g2.eta, g1.level)
    return c
