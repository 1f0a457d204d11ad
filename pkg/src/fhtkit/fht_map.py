"""Images of the generators x_lambda under the inverse-FHT map.

x_lambda is treated as a label only; everything here is formal-character
arithmetic on T.  All infinite characters are truncated to an explicit
window.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .affine_weyl import enumerate_orbit, signed_weyl_orbit
from .characters import AlternatingCharacter, FormalCharacter, char_multiply, restrict_to_alcove
from .rootsystem import RootSystem, Weight, b_flat
from .verlinde import FusionElement, LevelError, freudenthal_weights, is_dominant, level_weights


@dataclass(frozen=True)
class GeneratorClass:
    lam: Weight
    k: int


def weyl_numerator(rs: RootSystem, lam) -> FormalCharacter:
    """sum over W of det(w) e_{w(lam + rho) - rho}."""
    lam = tuple(lam)
    if not is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    orbit = signed_weyl_orbit(rs, [x + 1 for x in lam])
    return FormalCharacter({tuple(v - 1 for v in w): s for w, s in orbit})


def wedge_n_minus_char(rs: RootSystem) -> FormalCharacter:
    """prod over negative roots alpha of (1 - e_alpha)."""
    out = FormalCharacter.monomial(rs.zero)
    for alpha in rs.positive_roots:
        out = char_multiply(out, FormalCharacter({rs.zero: 1, tuple(-a for a in alpha): -1}))
    return out


def restriction_character(rs: RootSystem, lam) -> FormalCharacter:
    return freudenthal_weights(rs, lam).character()


def numerator_identity_check(rs: RootSystem, lam) -> bool:
    lhs = char_multiply(restriction_character(rs, lam), wedge_n_minus_char(rs))
    return lhs == weyl_numerator(rs, lam)


def _check_level(rs: RootSystem, lam: Weight, k: int) -> int:
    lw = level_weights(rs, k)
    if lam not in lw:
        raise LevelError(f"{lam} is not a level-{k} weight of {rs.name}")
    return lw.level


def fht_image(rs: RootSystem, lam, k: int, window: int) -> FormalCharacter:
    """Window truncation of sum_{w in W_aff} (-1)^l(w) e_{w . lam} at level k + h^vee."""
    lam = tuple(lam)
    ell = _check_level(rs, lam, k)
    return FormalCharacter(enumerate_orbit(rs, lam, ell, window))


def fht_image_alternating(rs: RootSystem, lam, k: int) -> AlternatingCharacter:
    lam = tuple(lam)
    ell = _check_level(rs, lam, k)
    return AlternatingCharacter.delta(rs, ell, lam)


def lattice_comb(rs: RootSystem, level: int, window: int) -> FormalCharacter:
    """sum of e_{level * B_flat(eta)} over the eta with max|coord| <= window."""
    ginv = rs.gram_coroot_inv
    bound = max(sum(abs(x) for x in row) for row in ginv)
    reach = int(bound * Fraction(window, level)) + 1
    out = {}
    for eta in itertools.product(range(-reach, reach + 1), repeat=rs.rank):
        w = tuple(level * x for x in b_flat(rs, eta))
        if max(map(abs, w)) <= window:
            out[w] = 1
    return FormalCharacter(out)


def assembly_margin(rs: RootSystem, lam) -> int:
    return weyl_numerator(rs, lam).radius()


def assembly_character(rs: RootSystem, lam, k: int, window: int, comb_eta_radius: int | None = None) -> FormalCharacter:
    """T-character of L^2(Pi) (x) R_lam^T, truncated to the window.

    The comb runs over eta with level*B_flat(eta) in the window, so the result
    is complete on the box of radius ``window - assembly_margin``.  Passing
    ``comb_eta_radius`` instead uses the eta-box of that radius.
    """
    lam = tuple(lam)
    ell = _check_level(rs, lam, k)
    if comb_eta_radius is None:
        comb = lattice_comb(rs, ell, window)
    else:
        comb = FormalCharacter(
            {
                tuple(ell * x for x in b_flat(rs, eta)): 1
                for eta in itertools.product(range(-comb_eta_radius, comb_eta_radius + 1), repeat=rs.rank)
            }
        )
    return char_multiply(weyl_numerator(rs, lam), comb).truncate(window)


def inverse_fht(ac: AlternatingCharacter) -> FusionElement:
    k = ac.level - ac.rs.h_dual
    if k < 1:
        raise LevelError(f"level {ac.level} is below h^vee + 1 = {ac.rs.h_dual + 1}")
    return FusionElement(k, ac.alcove_mults)


def fusion_via_fht(rs: RootSystem, lam, mu, k: int, window: int) -> FusionElement:
    """[V_mu] * x_lam computed on the alternating side, then pulled back."""
    mu = tuple(mu)
    img = fht_image(rs, lam, k, window)
    chi = restriction_character(rs, mu)
    inner = window - chi.radius()
    prod = char_multiply(chi, img).truncate(inner)
    return inverse_fht(restrict_to_alcove(rs, prod, k + rs.h_dual, inner))
