"""The level-ell ideal of the group algebra of T x| Pi^bas in the theta basis.

theta_{eta, mu} is the rank-one operator on l^2(Pi*) sending delta_mu to
delta_{mu + ell B_flat(eta)}.  The theta presentation is taken through the
fixed isomorphism Psi of :mod:`fhtkit.lattice_cocycle`, which is why every
structure constant is an integer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .characters import CosetSystem, PeriodicCharacter, box, coset_indicator
from .rootsystem import CorootElem, RootSystem, Weight, b_flat


class WindowOverflowError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ThetaElement:
    rs: RootSystem
    level: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.level == 0:
            raise ValueError("only nonzero levels are modelled")
        acc: dict = {}
        for (eta, mu), c in self.terms.items():
            key = (tuple(eta), tuple(mu))
            acc[key] = acc.get(key, 0) + int(c)
        object.__setattr__(self, "terms", {k: c for k, c in sorted(acc.items()) if c})

    @classmethod
    def theta(cls, rs: RootSystem, level: int, eta: CorootElem, mu: Weight, coeff: int = 1) -> "ThetaElement":
        return cls(rs, level, {(tuple(eta), tuple(mu)): coeff})

    def __eq__(self, other) -> bool:
        if not isinstance(other, ThetaElement):
            return NotImplemented
        return self.level == other.level and self.terms == other.terms

    def __add__(self, other: "ThetaElement") -> "ThetaElement":
        _same_level(self, other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return ThetaElement(self.rs, self.level, out)

    def __mul__(self, other: "ThetaElement") -> "ThetaElement":
        return theta_multiply(self, other)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"ThetaElement(level={self.level}, {self.terms})"


def _same_level(a: ThetaElement, b: ThetaElement) -> None:
    if a.level != b.level:
        raise ValueError(f"level mismatch: {a.level} vs {b.level}")


def _target(rs: RootSystem, level: int, eta, mu) -> Weight:
    return tuple(m + level * s for m, s in zip(mu, b_flat(rs, eta)))


def theta_multiply(a: ThetaElement, b: ThetaElement) -> ThetaElement:
    """theta_{eta,mu} theta_{eta',mu'} = [mu = mu' + ell B_flat(eta')] theta_{eta+eta', mu'}."""
    _same_level(a, b)
    rs, ell = a.rs, a.level
    by_target: dict[Weight, list] = {}
    for (eta2, mu2), c2 in b.terms.items():
        by_target.setdefault(_target(rs, ell, eta2, mu2), []).append((eta2, mu2, c2))
    out: dict = {}
    for (eta1, mu1), c1 in a.terms.items():
        for eta2, mu2, c2 in by_target.get(mu1, ()):
            key = (tuple(x + y for x, y in zip(eta1, eta2)), mu2)
            out[key] = out.get(key, 0) + c1 * c2
    return ThetaElement(rs, ell, out)


def theta_star(a: ThetaElement) -> ThetaElement:
    """theta_{eta,mu}^* = theta_{-eta, mu + ell B_flat(eta)}."""
    rs, ell = a.rs, a.level
    return ThetaElement(
        rs, ell, {(tuple(-e for e in eta), _target(rs, ell, eta, mu)): c for (eta, mu), c in a.terms.items()}
    )


@dataclass(frozen=True, eq=False)
class BlockMatrixModel:
    """One integer matrix per coset [xi], on the basis delta_{xi + ell B_flat(eta)}, |eta|_inf <= window."""

    rs: RootSystem
    level: int
    window: int
    blocks: dict

    @property
    def basis(self) -> list[CorootElem]:
        return block_basis(self.rs.rank, self.window)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BlockMatrixModel):
            return NotImplemented
        return (
            self.level == other.level
            and self.window == other.window
            and self.blocks.keys() == other.blocks.keys()
            and all(np.array_equal(self.blocks[k], other.blocks[k]) for k in self.blocks)
        )

    def __matmul__(self, other: "BlockMatrixModel") -> "BlockMatrixModel":
        return BlockMatrixModel(self.rs, self.level, self.window, {k: self.blocks[k] @ other.blocks[k] for k in self.blocks})

    def is_zero(self) -> bool:
        return all(not m.any() for m in self.blocks.values())

    def to_json(self) -> dict:
        return {
            "lie_type": self.rs.name,
            "level": self.level,
            "window": self.window,
            "basis_eta": [list(e) for e in self.basis],
            "blocks": [{"coset": list(k), "matrix": m.tolist()} for k, m in sorted(self.blocks.items())],
        }


def block_basis(rank: int, window: int) -> list[CorootElem]:
    return list(box(rank, window))


def matrix_model(a: ThetaElement, window: int) -> BlockMatrixModel:
    rs, ell = a.rs, a.level
    cs = CosetSystem.of(rs, ell)
    basis = block_basis(rs.rank, window)
    index = {e: i for i, e in enumerate(basis)}
    n = len(basis)
    blocks = {rep: np.zeros((n, n), dtype=np.int64) for rep in cs.transversal()}
    for (eta, mu), c in a.terms.items():
        rep = cs.reduce(mu)
        src = cs.translation_of(mu, rep)
        dst = tuple(x + y for x, y in zip(src, eta))
        if src not in index or dst not in index:
            raise WindowOverflowError(f"term theta_{{{eta},{mu}}} leaves the window {window}")
        blocks[rep][index[dst], index[src]] += c
    return BlockMatrixModel(rs, ell, window, blocks)


def dense_operator(a: ThetaElement, weights: Iterable[Weight]) -> tuple[list[Weight], np.ndarray]:
    """The operator of ``a`` on span{delta_xi : xi in weights}, built without any coset bookkeeping."""
    rs, ell = a.rs, a.level
    weights = sorted(set(map(tuple, weights)))
    index = {w: i for i, w in enumerate(weights)}
    mat = np.zeros((len(weights), len(weights)), dtype=np.int64)
    for (eta, mu), c in a.terms.items():
        tgt = _target(rs, ell, eta, mu)
        if mu in index and tgt in index:
            mat[index[tgt], index[mu]] += c
    return weights, mat


def assemble_blocks(model: BlockMatrixModel) -> tuple[list[Weight], np.ndarray]:
    """Block-diagonal matrix of ``model`` on the union of the block bases, as weights."""
    rs, ell = model.rs, model.level
    basis = model.basis
    weights = []
    for rep in sorted(model.blocks):
        for eta in basis:
            weights.append(tuple(r + ell * s for r, s in zip(rep, b_flat(rs, eta))))
    n = len(basis)
    full = np.zeros((len(weights), len(weights)), dtype=np.int64)
    for b, rep in enumerate(sorted(model.blocks)):
        full[b * n:(b + 1) * n, b * n:(b + 1) * n] = model.blocks[rep]
    return weights, full


def window_weights(rs: RootSystem, level: int, window: int) -> list[Weight]:
    """All weights rep + ell B_flat(eta) covered by a block model of the given window."""
    cs = CosetSystem.of(rs, level)
    out = []
    for rep in cs.transversal():
        for eta in block_basis(rs.rank, window):
            out.append(tuple(r + level * s for r, s in zip(rep, b_flat(rs, eta))))
    return out


def k0_generator_character(rs: RootSystem, xi: Weight, level: int) -> PeriodicCharacter:
    """Formal T-character of the generator L^2([xi]): the indicator of the coset."""
    return coset_indicator(rs, xi, level)


def random_theta(rs: RootSystem, level: int, rng, n_terms: int = 4, radius: int = 1) -> ThetaElement:
    """Random element whose terms have source and target with |eta|_inf <= radius in every block."""
    cs = CosetSystem.of(rs, level)
    reps = cs.transversal()
    grid = list(itertools.product(range(-radius, radius + 1), repeat=rs.rank))
    terms = {}
    for _ in range(n_terms):
        rep = rng.choice(reps)
        src = rng.choice(grid)
        dst = rng.choice(grid)
        mu = tuple(r + level * s for r, s in zip(rep, b_flat(rs, src)))
        eta = tuple(d - s for d, s in zip(dst, src))
        terms[(eta, mu)] = terms.get((eta, mu), 0) + rng.randint(-3, 3)
    return ThetaElement(rs, level, terms)
