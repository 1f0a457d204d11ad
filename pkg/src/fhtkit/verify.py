"""Invariant suites, runnable from the CLI (``fhtkit verify``) or directly.

Each suite runs on a list of (lie_type, parameter) configurations and
returns pass/fail counts per named check.  Randomness is seeded from the
run seed and the task identity, so results do not depend on scheduling.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form

from . import affine_weyl as aw
from . import characters as ch
from . import fht_map as fm
from . import lattice_cocycle as lc
from . import oracles
from . import twisted_group_algebra as tga
from . import verlinde as vl
from .rootsystem import build_root_system, inner_product_coroots

# suite -> (parameter kind, default configurations)
DEFAULTS = {
    "lattice_cocycle": ("level", [("A1", 1), ("A2", 1), ("B2", 1), ("G2", 1), ("A2", 2), ("G2", 3)]),
    "affine_weyl": ("level", [("A1", l) for l in range(2, 7)] + [("A2", l) for l in range(3, 6)]),
    "characters": ("level", [("A1", l) for l in range(2, 7)] + [("A2", l) for l in range(3, 6)]),
    "verlinde": ("k", [("A1", k) for k in range(1, 7)] + [("A2", k) for k in range(1, 5)] + [("G2", 1), ("G2", 2)]),
    "twisted_group_algebra": ("level", [("A1", 2), ("A1", 3), ("A2", 2)]),
    "fht_map": ("k", [("A1", k) for k in range(1, 6)] + [("A2", k) for k in range(1, 4)]),
}
SUITES = tuple(DEFAULTS)


class Tally:
    def __init__(self):
        self.counts: dict[str, list[int]] = {}

    def check(self, name: str, ok: bool) -> None:
        c = self.counts.setdefault(name, [0, 0])
        c[0 if ok else 1] += 1

    def as_dict(self) -> dict:
        return {k: {"passed": v[0], "failed": v[1]} for k, v in sorted(self.counts.items())}


def _rng(seed: int, *parts) -> random.Random:
    return random.Random("/".join(map(str, (seed,) + parts)))


# ---------------------------------------------------------------------------


def random_group_elem(rs, rng: random.Random, level: int) -> lc.GroupElem:
    t = tuple(Fraction(rng.randrange(d), d) for d in (rng.randint(1, 12) for _ in range(rs.rank)))
    eta = tuple(rng.randint(-4, 4) for _ in range(rs.rank))
    return lc.GroupElem.make(t, eta, Fraction(rng.randrange(24), 24), level)


def suite_lattice_cocycle(lie_type: str, level: int, seed: int, cases: int = 1000) -> dict:
    rs = build_root_system(lie_type)
    rng = _rng(seed, "lattice_cocycle", lie_type, level)
    t = Tally()

    def reta():
        return tuple(rng.randint(-5, 5) for _ in range(rs.rank))

    for _ in range(cases):
        a, b, c = reta(), reta(), reta()
        ab = tuple(x + y for x, y in zip(a, b))
        bc = tuple(x + y for x, y in zip(b, c))
        t.check("sigma_bimultiplicative", lc.sigma(rs, ab, c) == lc.sigma(rs, a, c) * lc.sigma(rs, b, c)
                and lc.sigma(rs, a, bc) == lc.sigma(rs, a, b) * lc.sigma(rs, a, c))
        comm = lc.sigma(rs, a, b) * lc.sigma(rs, b, a)
        t.check("commutator_law", comm == (-1) ** (inner_product_coroots(rs, a, b) % 2))
        g1, g2, g3 = (random_group_elem(rs, rng, level) for _ in range(3))
        for variant in ("bas", "triv"):
            lhs = lc.multiply(rs, lc.multiply(rs, g1, g2, variant), g3, variant)
            rhs = lc.multiply(rs, g1, lc.multiply(rs, g2, g3, variant), variant)
            t.check(f"associativity_{variant}", lhs == rhs)
        t.check("psi_homomorphism",
                lc.psi(rs, lc.multiply(rs, g1, g2, "bas"))
                == lc.multiply(rs, lc.psi(rs, g1), lc.psi(rs, g2), "triv"))
        c12 = lc.cocycle(rs, g1, g2) * lc.cocycle(rs, lc.multiply(rs, g1, g2), g3)
        c23 = lc.cocycle(rs, g1, lc.multiply(rs, g2, g3)) * lc.cocycle(rs, g2, g3)
        t.check("two_cocycle_identity", c12 == c23)
        mu = reta()
        absorbed = lc.kappa(rs, mu, lc.eta_epsilon(rs, a), -1)
        t.check("absorbing_property", absorbed == lc.sigma_phase(rs, mu, a))
    return t.as_dict()


def _all_affine_words(rs, max_len: int):
    gens = aw.affine_generators(rs)
    layer = [aw.AffineWeylElem.identity(rs)]
    yield layer[0]
    for _ in range(max_len):
        layer = [aw.compose(rs, w, g) for w in layer for g in gens]
        yield from layer


def suite_affine_weyl(lie_type: str, level: int, seed: int, cases: int = 1000) -> dict:
    rs = build_root_system(lie_type)
    rng = _rng(seed, "affine_weyl", lie_type, level)
    t = Tally()
    interior = aw.interior_weights(rs, level)
    max_len = 6 if rs.rank <= 2 else 4
    words = list(_all_affine_words(rs, max_len))
    for xi0 in interior:
        for w in words:
            moved = aw.shifted_action(rs, w, xi0, level)
            t.check("fold_round_trip", aw.affine_fold(rs, moved, level) == aw.FoldOutcome.interior(xi0, w.parity))
    for w1, w2 in zip(rng.sample(words, min(50, len(words))), rng.sample(words, min(50, len(words)))):
        xi = tuple(rng.randint(-6, 6) for _ in range(rs.rank))
        t.check("action_law",
                aw.shifted_action(rs, aw.compose(rs, w1, w2), xi, level)
                == aw.shifted_action(rs, w1, aw.shifted_action(rs, w2, xi, level), level))
    radius = 3 * level
    for xi in itertools.product(range(-radius, radius + 1), repeat=rs.rank):
        fo = aw.affine_fold(rs, xi, level)
        t.check("boundary_exact", fo.is_boundary == oracles.on_affine_wall(rs, xi, level))
        if fo.is_interior:
            t.check("interior_representative", oracles.in_open_alcove(rs, fo.weight, level))
    for _ in range(cases):
        xi = tuple(rng.randint(-8 * level, 8 * level) for _ in range(rs.rank))
        t.check("sign_order_independent", aw.affine_fold(rs, xi, level, choose=rng.choice) == aw.affine_fold(rs, xi, level))
    k = level - rs.h_dual
    if k >= 0:
        t.check("interior_count", len(interior) == oracles.verlinde_dimension(rs, k))
    for xi0 in interior:
        got = dict(aw.enumerate_orbit(rs, xi0, level, 8))
        t.check("orbit_vs_brute_force", got == oracles.brute_orbit(rs, xi0, level, 8))
    return t.as_dict()


def random_character(rng: random.Random, rank: int, n_terms: int = 20, radius: int = 5) -> ch.FormalCharacter:
    return ch.FormalCharacter(
        (tuple(rng.randint(-radius, radius) for _ in range(rank)), rng.randint(-3, 3)) for _ in range(rng.randint(0, n_terms))
    )


def suite_characters(lie_type: str, level: int, seed: int, cases: int = 500) -> dict:
    rs = build_root_system(lie_type)
    rng = _rng(seed, "characters", lie_type, level)
    t = Tally()
    interior = aw.interior_weights(rs, level)
    window = 10
    if interior:
        ac = ch.AlternatingCharacter(rs, level, {w: rng.randint(-5, 5) for w in interior})
        for _ in range(cases):
            w = aw.random_affine_elem(rs, rng, 6)
            xi = tuple(rng.randint(-12, 12) for _ in range(rs.rank))
            t.check("alternation",
                    ch.alternating_extend(ac, aw.shifted_action(rs, w, xi, level))
                    == w.parity * ch.alternating_extend(ac, xi))
        for lam in interior:
            delta = ch.AlternatingCharacter.delta(rs, level, lam)
            t.check("restrict_extend_identity", ch.restrict_to_alcove(rs, delta.window(window), level, window) == delta)
        bad = ac.window(window) + ch.FormalCharacter.monomial(tuple(-1 for _ in range(rs.rank)))
        try:
            ch.restrict_to_alcove(rs, bad, level, window)
            t.check("rejects_boundary_support", False)
        except ch.InconsistencyError:
            t.check("rejects_boundary_support", True)
    for _ in range(200):
        a, b = random_character(rng, rs.rank), random_character(rng, rs.rank)
        t.check("multiply_vs_dense_oracle", ch.char_multiply(a, b) == oracles.dense_multiply(a, b))
        t.check("multiply_commutative", a * b == b * a)
    for _ in range(50):
        a, b, c = (random_character(rng, rs.rank, 6, 3) for _ in range(3))
        t.check("multiply_associative", (a * b) * c == a * (b * c))
    for _ in range(100):
        a, b = random_character(rng, rs.rank), random_character(rng, rs.rank)
        eta = tuple(rng.randint(-2, 2) for _ in range(rs.rank))
        shift = ch.lattice_shift(rs, eta, level)
        t.check("periodize_translation_invariant", ch.periodize(rs, a.shift(shift), level) == ch.periodize(rs, a, level))
        t.check("periodize_additive", ch.periodize(rs, a + b, level) == ch.periodize(rs, a, level) + ch.periodize(rs, b, level))
    cs = ch.CosetSystem.of(rs, level)
    snf = smith_normal_form(Matrix(rs.gram_coroot) * level)
    invariants = 1
    for i in range(rs.rank):
        invariants *= abs(int(snf[i, i]))
    t.check("coset_count", cs.size == level ** rs.rank * rs.lattice_index == invariants)
    reps = cs.transversal()
    t.check("transversal_canonical", all(cs.reduce(r) == r for r in reps) and len(set(reps)) == cs.size)
    return t.as_dict()


def _linear_fusion(rs, x: vl.FusionElement, y: vl.FusionElement, k: int) -> vl.FusionElement:
    out = vl.FusionElement(k)
    for a, ca in x.coeffs.items():
        for b, cb in y.coeffs.items():
            out = out + vl.fusion(rs, a, b, k).scale(ca * cb)
    return out


def suite_verlinde(lie_type: str, k: int, seed: int, cases: int = 200, tol: float = 1e-9) -> dict:
    rs = build_root_system(lie_type)
    rng = _rng(seed, "verlinde", lie_type, k)
    t = Tally()
    lw = list(vl.level_weights(rs, k))
    table = {(a, b): vl.fusion(rs, a, b, k) for a in lw for b in lw}
    vtable, dev = vl.verlinde_table(rs, k)
    t.check("verlinde_deviation_below_1e-6", dev < 1e-6)
    sm = vl.s_matrix(rs, k)
    t.check("s_matrix_symmetric_unitary", sm.symmetry_defect() < tol and sm.unitarity_defect() < tol)
    points = vl.special_points(rs, k)
    chars = {lam: vl.freudenthal_weights(rs, lam) for lam in lw}
    values = {lam: [vl.char_value(rs, chars[lam], p) for p in points] for lam in lw}
    zero = tuple(0 for _ in range(rs.rank))
    for a in lw:
        t.check("unit_law", table[a, zero] == vl.FusionElement.basis(k, a))
        t.check("freudenthal_weyl_dimension", chars[a].dimension == vl.weyl_dimension(rs, a))
        for b in lw:
            t.check("oracle_equivalence", table[a, b] == vtable[a, b])
            t.check("commutative", table[a, b] == table[b, a])
            decomp = vl.tensor_decompose(rs, a, b)
            t.check("quotient_multiplicative", vl.project_decomposition(rs, decomp, k) == table[a, b])
            worst = 0.0
            for i in range(len(points)):
                rhs = sum(c * values[n][i] for n, c in table[a, b].coeffs.items())
                worst = max(worst, abs(values[a][i] * values[b][i] - rhs))
            t.check("special_point_identity", worst < tol)
    for _ in range(cases):
        a, b, c = (rng.choice(lw) for _ in range(3))
        left = _linear_fusion(rs, table[a, b], vl.FusionElement.basis(k, c), k)
        right = _linear_fusion(rs, vl.FusionElement.basis(k, a), table[b, c], k)
        t.check("associative", left == right)
    for nu in itertools.product(range(k + 3), repeat=rs.rank):
        if sum(nu) <= k + 2:
            t.check("ideal_vanishing", vl.ideal_vanishing_check(rs, nu, k, tol))
    for _ in range(20):
        a = tuple(rng.randint(0, 2) for _ in range(rs.rank))
        b = tuple(rng.randint(0, 2) for _ in range(rs.rank))
        prod = vl.freudenthal_weights(rs, a).character() * vl.freudenthal_weights(rs, b).character()
        peeled = oracles.peel_decomposition(rs, prod, lambda w: vl.freudenthal_weights(rs, w).character())
        t.check("tensor_vs_peel_oracle", vl.tensor_decompose(rs, a, b) == peeled)
    t.check("level_count_vs_enumeration", len(lw) == oracles.verlinde_dimension(rs, k))
    return t.as_dict()


def suite_twisted_group_algebra(lie_type: str, level: int, seed: int, cases: int = 500) -> dict:
    rs = build_root_system(lie_type)
    rng = _rng(seed, "twisted_group_algebra", lie_type, level)
    t = Tally()
    window = 2
    for _ in range(cases):
        a, b, c = (tga.random_theta(rs, level, rng, 5, 1) for _ in range(3))
        t.check("associative", (a * b) * c == a * (b * c))
        t.check("star_anti_multiplicative", tga.theta_star(a * b) == tga.theta_star(b) * tga.theta_star(a))
        t.check("star_involutive", tga.theta_star(tga.theta_star(a)) == a)
    for _ in range(200):
        a, b = (tga.random_theta(rs, level, rng, 5, 1) for _ in range(2))
        t.check("matrix_model_homomorphism", tga.matrix_model(a * b, window) == tga.matrix_model(a, window) @ tga.matrix_model(b, window))
    cs = ch.CosetSystem.of(rs, level)
    wweights = tga.window_weights(rs, level, window)
    for _ in range(50):
        a = tga.random_theta(rs, level, rng, 8, window)
        model = tga.matrix_model(a, window)
        t.check("block_count", len(model.blocks) == level ** rs.rank * rs.lattice_index)
        weights, dense = tga.dense_operator(a, wweights)
        reps = [cs.reduce(w) for w in weights]
        coupled = any(dense[i, j] and reps[i] != reps[j] for i, j in zip(*dense.nonzero()))
        t.check("no_cross_coset_entries", not coupled)
        bw, full = tga.assemble_blocks(model)
        perm = [weights.index(w) for w in bw]
        t.check("blocks_match_dense_operator", (dense[perm][:, perm] == full).all())
        t.check("faithful_on_window", model.is_zero() == (not a))
    reps = cs.transversal()
    chars = [tga.k0_generator_character(rs, r, level) for r in reps]
    t.check("k0_characters_distinct", len({tuple(sorted(c.coset_mults.items())) for c in chars}) == len(chars))
    total = chars[0]
    for c in chars[1:]:
        total = total + c
    t.check("k0_characters_partition", all(m == 1 for m in total.coset_mults.values()))
    return t.as_dict()


def suite_fht_map(lie_type: str, k: int, seed: int, cases: int = 500, window: int = 10) -> dict:
    rs = build_root_system(lie_type)
    rng = _rng(seed, "fht_map", lie_type, k)
    t = Tally()
    ell = k + rs.h_dual
    lw = list(vl.level_weights(rs, k))
    images = {lam: fm.fht_image(rs, lam, k, window) for lam in lw}
    for lam in lw:
        img = images[lam]
        ac = ch.restrict_to_alcove(rs, img, ell, window)
        t.check("round_trip", fm.inverse_fht(ac) == vl.FusionElement.basis(k, lam))
        margin = fm.assembly_margin(rs, lam)
        inner = window - margin
        t.check("assembly_equals_orbit_sum", fm.assembly_character(rs, lam, k, window).truncate(inner) == img.truncate(inner))
        t.check("image_vs_brute_orbit", img.support == oracles.brute_orbit(rs, lam, ell, window))
        for _ in range(max(1, cases // len(lw))):
            w = aw.random_affine_elem(rs, rng, 6)
            xi = tuple(rng.randint(-window, window) for _ in range(rs.rank))
            moved = aw.shifted_action(rs, w, xi, ell)
            if max(map(abs, moved)) <= window:
                t.check("alternation", img.get(moved) == w.parity * img.get(xi))
        for mu in lw:
            t.check("ring_compatibility", fm.fusion_via_fht(rs, lam, mu, k, window) == vl.fusion(rs, lam, mu, k))
    for lam in itertools.product(range(4), repeat=rs.rank):
        t.check("numerator_identity", fm.numerator_identity_check(rs, lam))
    return t.as_dict()


RUNNERS = {
    "lattice_cocycle": suite_lattice_cocycle,
    "affine_weyl": suite_affine_weyl,
    "characters": suite_characters,
    "verlinde": suite_verlinde,
    "twisted_group_algebra": suite_twisted_group_algebra,
    "fht_map": suite_fht_map,
}


def plan(suites=None, lie_type=None, k=None, level=None) -> list[tuple[str, str, int]]:
    """Expand a selection into (suite, lie_type, parameter) tasks."""
    suites = list(suites or SUITES)
    tasks = []
    for s in suites:
        if s not in DEFAULTS:
            raise KeyError(s)
        kind, configs = DEFAULTS[s]
        if lie_type is not None:
            h = build_root_system(lie_type).h_dual
            if kind == "k":
                ks = [k] if k is not None else sorted({p for tname, p in configs if tname == lie_type} or {1})
                configs = [(lie_type, kk) for kk in ks]
            else:
                if level is not None:
                    ls = [level]
                elif k is not None:
                    ls = [k + h]
                else:
                    ls = sorted({p for tname, p in configs if tname == lie_type} or {h + 1})
                configs = [(lie_type, ll) for ll in ls]
        elif k is not None or level is not None:
            new = []
            for tname, p in configs:
                h = build_root_system(tname).h_dual
                if kind == "k":
                    new.append((tname, k if k is not None else max(1, level - h)))
                else:
                    new.append((tname, level if level is not None else k + h))
            configs = sorted(set(new), key=new.index)
        tasks.extend((s, tname, p) for tname, p in configs)
    return tasks


def run_task(task: tuple[str, str, int], seed: int = 0) -> dict:
    suite, lie_type, param = task
    return RUNNERS[suite](lie_type, param, seed)


def run(tasks, seed: int = 0, jobs: int = 1) -> dict:
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(run_task, tasks, [seed] * len(tasks)))
    else:
        results = [run_task(task, seed) for task in tasks]
    report: dict = {}
    passed = failed = 0
    for (suite, lie_type, param), res in zip(tasks, results):
        kind = DEFAULTS[suite][0]
        report.setdefault(suite, {})[f"{lie_type}:{kind}={param}"] = res
        for c in res.values():
            passed += c["passed"]
            failed += c["failed"]
    return {"suites": report, "passed": passed, "failed": failed, "all_passed": failed == 0}
