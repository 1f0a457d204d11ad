"""The level-k Verlinde ring and its two independent oracles.

Fusion is computed by Kac-Walton folding.  The S-matrix formula and the
character identity at the special points exp((xi+rho)/(k+h^vee)) are kept
deliberately separate from that path so they can check it.
"""

from __future__ import annotations

import cmath
import json
import logging
import math
import os
import tempfile
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Optional, Sequence

import numpy as np

from .affine_weyl import affine_fold, dominant_conjugate, finite_fold, interior_weights, signed_weyl_orbit, weyl_orbit
from .characters import FormalCharacter
from .rootsystem import RootSystem, Weight, b_sharp, build_root_system, inner_product_weights, pairing

log = logging.getLogger(__name__)

CACHE_ENV = "FHTKIT_CACHE_DIR"
CACHE_VERSION = "v1"


class OracleDisagreement(ArithmeticError):
    pass


class LevelError(ValueError):
    pass


@dataclass(frozen=True)
class LevelWeights:
    k: int
    level: int
    weights: tuple[Weight, ...]

    def __contains__(self, lam) -> bool:
        return tuple(lam) in self.weights

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)


def level_weights(rs: RootSystem, k: int) -> LevelWeights:
    """Dominant weights with B(lambda, theta) <= k."""
    if k < 0:
        raise LevelError("k must be >= 0")
    ell = k + rs.h_dual
    return LevelWeights(k, ell, tuple(interior_weights(rs, ell)))


def is_dominant(lam: Sequence[int]) -> bool:
    return all(x >= 0 for x in lam)


def weyl_dimension(rs: RootSystem, lam: Weight) -> int:
    num = Fraction(1)
    for a in rs.positive_coroots:
        num *= Fraction(pairing(rs, lam, a) + pairing(rs, rs.rho, a), pairing(rs, rs.rho, a))
    assert num.denominator == 1
    return int(num)


@dataclass(frozen=True, eq=False)
class WeightSystem:
    highest: Weight
    mults: dict

    @property
    def dimension(self) -> int:
        return sum(self.mults.values())

    def character(self) -> FormalCharacter:
        return FormalCharacter(self.mults)

    def dominant_part(self) -> dict:
        return {w: m for w, m in self.mults.items() if is_dominant(w)}


# ---------------------------------------------------------------------------
# Freudenthal recursion with a two-level cache


class FreudenthalCache:
    """In-memory memo plus an optional on-disk store, one JSON file per (type, lambda).

    Reads are lock-free; writes are serialized and atomic (write to a temp
    file, then rename).  A corrupt or inconsistent file is recomputed and
    overwritten.
    """

    def __init__(self, directory: Optional[os.PathLike] = None):
        self._mem: dict = {}
        self._lock = threading.Lock()
        self.directory = Path(directory) if directory else None

    def _path(self, rs: RootSystem, lam: Weight) -> Optional[Path]:
        if self.directory is None:
            return None
        return self.directory / CACHE_VERSION / rs.name / ("w_" + "_".join(map(str, lam)) + ".json")

    def get(self, rs: RootSystem, lam: Weight) -> WeightSystem:
        key = (rs.lie_type, lam)
        ws = self._mem.get(key)
        if ws is not None:
            return ws
        ws = self._load(rs, lam)
        if ws is None:
            ws = _freudenthal(rs, lam)
            self._store(rs, lam, ws)
        with self._lock:
            self._mem[key] = ws
        return ws

    def _load(self, rs: RootSystem, lam: Weight) -> Optional[WeightSystem]:
        path = self._path(rs, lam)
        if path is None or not path.exists():
            return None
        try:
            data = json.loads(path.read_text())
            ch = FormalCharacter.from_json(data)
            if data.get("lie_type") != rs.name or tuple(data.get("highest", ())) != lam:
                raise ValueError("key mismatch")
            mults = ch.support
            if sum(mults.values()) != weyl_dimension(rs, lam) or mults.get(lam) != 1:
                raise ValueError("inconsistent weight system")
            return WeightSystem(lam, mults)
        except Exception as exc:  # noqa: BLE001 - any corruption means recompute
            log.warning("discarding corrupt cache file %s: %s", path, exc)
            return None

    def _store(self, rs: RootSystem, lam: Weight, ws: WeightSystem) -> None:
        path = self._path(rs, lam)
        if path is None:
            return
        data = ws.character().to_json()
        data.update(lie_type=rs.name, highest=list(lam))
        with self._lock:
            try:
                path.parent.mkdir(parents=True, exist_ok=True)
                fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
                with os.fdopen(fd, "w") as fh:
                    json.dump(data, fh, sort_keys=True)
                os.replace(tmp, path)
            except OSError as exc:
                log.warning("could not write cache file %s: %s", path, exc)


_cache = FreudenthalCache(os.environ.get(CACHE_ENV) or None)


def set_cache_dir(directory: Optional[os.PathLike]) -> FreudenthalCache:
    global _cache
    _cache = FreudenthalCache(directory)
    return _cache


def get_cache() -> FreudenthalCache:
    return _cache


def _dominant_weights(rs: RootSystem, lam: Weight) -> set[Weight]:
    found = {lam}
    stack = [lam]
    pos = list(zip(rs.positive_roots, rs.positive_coroots))
    while stack:
        mu = stack.pop()
        for alpha, coroot in pos:
            n = pairing(rs, mu, coroot)
            for j in range(1, n + 1):
                nu = dominant_conjugate(rs, [m - j * a for m, a in zip(mu, alpha)])
                if nu not in found:
                    found.add(nu)
                    stack.append(nu)
    return found


def _freudenthal(rs: RootSystem, lam: Weight) -> WeightSystem:
    dominant = sorted(_dominant_weights(rs, lam), key=lambda mu: rs.height(tuple(a - b for a, b in zip(lam, mu))))
    rho = rs.rho
    lr = tuple(a + b for a, b in zip(lam, rho))
    norm_top = inner_product_weights(rs, lr, lr)
    mult: dict[Weight, int] = {lam: 1}

    def m_of(nu) -> int:
        return mult.get(dominant_conjugate(rs, nu), 0)

    for mu in dominant[1:]:
        total = Fraction(0)
        for alpha in rs.positive_roots:
            j = 1
            while True:
                nu = tuple(m + j * a for m, a in zip(mu, alpha))
                c = m_of(nu)
                if c == 0:
                    break
                total += c * inner_product_weights(rs, nu, alpha)
                j += 1
        mr = tuple(a + b for a, b in zip(mu, rho))
        val = 2 * total / (norm_top - inner_product_weights(rs, mr, mr))
        assert val.denominator == 1 and val >= 0, (lam, mu, val)
        if val:
            mult[mu] = int(val)
    full: dict[Weight, int] = {}
    for mu, c in mult.items():
        for w in weyl_orbit(rs, mu):
            full[w] = c
    return WeightSystem(lam, full)


def freudenthal_weights(rs: RootSystem, lam: Sequence[int]) -> WeightSystem:
    lam = tuple(lam)
    if len(lam) != rs.rank or not is_dominant(lam):
        raise ValueError(f"{lam} is not a dominant weight of {rs.name}")
    return _cache.get(rs, lam)


# ---------------------------------------------------------------------------
# R(G) and R_k(G)


def tensor_decompose(rs: RootSystem, lam: Sequence[int], mu: Sequence[int]) -> dict[Weight, int]:
    """Brauer-Klimyk: V_lam (x) V_mu as {nu: N_{lam mu}^nu}."""
    lam = tuple(lam)
    out: dict[Weight, int] = {}
    for xi, m in freudenthal_weights(rs, mu).mults.items():
        fo = finite_fold(rs, [a + b for a, b in zip(lam, xi)])
        if fo.is_interior:
            out[fo.weight] = out.get(fo.weight, 0) + fo.sign * m
    out = {nu: n for nu, n in out.items() if n}
    assert all(n > 0 for n in out.values())
    return dict(sorted(out.items()))


@dataclass(frozen=True, eq=False)
class FusionElement:
    k: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", {tuple(w): int(c) for w, c in sorted(self.coeffs.items()) if c})

    def __eq__(self, other) -> bool:
        if not isinstance(other, FusionElement):
            return NotImplemented
        return self.k == other.k and self.coeffs == other.coeffs

    def __add__(self, other: "FusionElement") -> "FusionElement":
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0) + c
        return FusionElement(self.k, out)

    def scale(self, c: int) -> "FusionElement":
        return FusionElement(self.k, {w: c * v for w, v in self.coeffs.items()})

    def __repr__(self) -> str:
        terms = " + ".join(f"{c}*[{','.join(map(str, w))}]" for w, c in self.coeffs.items())
        return f"FusionElement(k={self.k}: {terms or '0'})"

    def to_json(self) -> dict:
        return {"k": self.k, "coeffs": [[list(w), c] for w, c in self.coeffs.items()]}

    @classmethod
    def basis(cls, k: int, lam: Weight) -> "FusionElement":
        return cls(k, {tuple(lam): 1})


def _require_level(rs: RootSystem, k: int, *weights) -> int:
    lw = level_weights(rs, k)
    for w in weights:
        if tuple(w) not in lw:
            raise LevelError(f"{tuple(w)} is not a level-{k} weight of {rs.name}")
    return lw.level


def fusion(rs: RootSystem, lam: Sequence[int], mu: Sequence[int], k: int) -> FusionElement:
    """Kac-Walton: Brauer-Klimyk with the rho-shifted affine fold at level k + h^vee."""
    lam, mu = tuple(lam), tuple(mu)
    ell = _require_level(rs, k, lam, mu)
    out: dict[Weight, int] = {}
    for xi, m in freudenthal_weights(rs, mu).mults.items():
        fo = affine_fold(rs, [a + b for a, b in zip(lam, xi)], ell)
        if fo.is_interior:
            out[fo.weight] = out.get(fo.weight, 0) + fo.sign * m
    return FusionElement(k, out)


def project_to_level(rs: RootSystem, nu: Sequence[int], k: int) -> FusionElement:
    """Image of [V_nu] under R(G) -> R_k(G)."""
    nu = tuple(nu)
    if not is_dominant(nu):
        raise ValueError(f"{nu} is not dominant")
    fo = affine_fold(rs, nu, k + rs.h_dual)
    if fo.is_boundary:
        return FusionElement(k)
    return FusionElement(k, {fo.weight: fo.sign})


def project_decomposition(rs: RootSystem, decomposition: Mapping[Weight, int], k: int) -> FusionElement:
    """Linear extension of project_to_level to an element of R(G)."""
    out = FusionElement(k)
    for nu, n in decomposition.items():
        out = out + project_to_level(rs, nu, k).scale(n)
    return out


# ---------------------------------------------------------------------------
# S-matrix oracle


@dataclass(frozen=True, eq=False)
class SMatrix:
    k: int
    weights: tuple[Weight, ...]
    entries: np.ndarray
    normalization: float

    def symmetry_defect(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.T)))

    def unitarity_defect(self) -> float:
        s = self.entries
        return float(np.max(np.abs(s @ s.conj().T - np.eye(len(s)))))


def _phase(x: Fraction) -> complex:
    x = x - math.floor(x)
    return cmath.exp(2j * math.pi * float(x))


def s_matrix(rs: RootSystem, k: int, tol: float = 1e-9) -> SMatrix:
    if k < 1:
        raise LevelError("k must be >= 1")
    lw = level_weights(rs, k)
    ell = lw.level
    shifted = [tuple(x + 1 for x in lam) for lam in lw]
    n = len(shifted)
    raw = np.zeros((n, n), dtype=complex)
    for a, lr in enumerate(shifted):
        orbit = signed_weyl_orbit(rs, lr)
        for b, mr in enumerate(shifted):
            raw[a, b] = sum(s * _phase(-inner_product_weights(rs, v, mr) / ell) for v, s in orbit)
    c = 1.0 / math.sqrt(float(np.sum(np.abs(raw[0]) ** 2)))
    sm = SMatrix(k, lw.weights, raw * c, c)
    if sm.symmetry_defect() > tol or sm.unitarity_defect() > tol:
        raise OracleDisagreement(
            f"S-matrix for {rs.name} k={k} not symmetric/unitary: "
            f"{sm.symmetry_defect():.3g}, {sm.unitarity_defect():.3g}"
        )
    return sm


def verlinde_table(rs: RootSystem, k: int, tol: float = 1e-6) -> tuple[dict, float]:
    """All N_{lam mu}^nu from the Verlinde formula, with the max pre-rounding deviation."""
    sm = s_matrix(rs, k)
    s = sm.entries
    w = sm.weights
    inv0 = 1.0 / s[0]
    table = {}
    worst = 0.0
    for a in range(len(w)):
        for b in range(len(w)):
            # vals[c] = sum_sigma conj(S_{c sigma}) S_{a sigma} S_{b sigma} / S_{0 sigma}
            vals = s.conj() @ (s[a] * s[b] * inv0)
            rounded = np.rint(vals.real)
            worst = max(worst, float(np.max(np.abs(vals - rounded))))
            table[w[a], w[b]] = FusionElement(k, {w[c]: int(rounded[c]) for c in range(len(w))})
    if worst > tol:
        raise OracleDisagreement(f"Verlinde formula deviates from integers by {worst:.3g}")
    return table, worst


def verlinde_fusion(rs: RootSystem, lam, mu, k: int, tol: float = 1e-6) -> FusionElement:
    lam, mu = tuple(lam), tuple(mu)
    _require_level(rs, k, lam, mu)
    sm = s_matrix(rs, k)
    s = sm.entries
    a, b = sm.weights.index(lam), sm.weights.index(mu)
    vals = s.conj() @ (s[a] * s[b] / s[0])
    rounded = np.rint(vals.real)
    dev = float(np.max(np.abs(vals - rounded)))
    if dev > tol:
        raise OracleDisagreement(f"Verlinde formula deviates from integers by {dev:.3g}")
    return FusionElement(k, {sm.weights[c]: int(rounded[c]) for c in range(len(sm.weights))})


# ---------------------------------------------------------------------------
# character values at the special points


def char_value(rs: RootSystem, ws: WeightSystem | FormalCharacter, x: Sequence[Fraction]) -> complex:
    """sum_mu mult(mu) exp(2 pi i <mu, x>), x a rational vector of t in coroot coordinates."""
    items = ws.mults.items() if isinstance(ws, WeightSystem) else ws.items()
    return sum((m * _phase(sum((Fraction(a) * b for a, b in zip(mu, x)), Fraction(0))) for mu, m in items), 0j)


def special_points(rs: RootSystem, k: int) -> list[tuple[Fraction, ...]]:
    """B_sharp(xi + rho) / (k + h^vee) for xi in the level-k weights."""
    lw = level_weights(rs, k)
    return [tuple(c / lw.level for c in b_sharp(rs, tuple(x + 1 for x in xi))) for xi in lw]


def ideal_vanishing_check(rs: RootSystem, nu: Sequence[int], k: int, tol: float = 1e-9) -> bool:
    """chi_nu minus the lift of its level-k projection vanishes at every special point."""
    nu = tuple(nu)
    diff = freudenthal_weights(rs, nu).character()
    for lam, c in project_to_level(rs, nu, k).coeffs.items():
        diff = diff - freudenthal_weights(rs, lam).character().scale(c)
    return all(abs(char_value(rs, diff, p)) < tol for p in special_points(rs, k))


def fusion_table(rs: RootSystem, k: int) -> dict:
    lw = level_weights(rs, k)
    return {(a, b): fusion(rs, a, b, k) for a in lw for b in lw}
