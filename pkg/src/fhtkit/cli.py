"""Command-line interface.

Exit codes: 0 success, 2 usage error, 3 oracle disagreement, 4 internal
invariant failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from . import verify as verify_mod
from .affine_weyl import FoldGuardError, affine_fold
from .config import RunConfig, merge, read_config_file
from .fht_map import fht_image
from .lattice_cocycle import GroupElem, multiply, psi, sigma
from .rootsystem import RootSystemError, build_root_system, inner_product_weights
from .twisted_group_algebra import ThetaElement, WindowOverflowError, matrix_model
from .verlinde import LevelError, OracleDisagreement, fusion, level_weights, s_matrix, set_cache_dir, verlinde_table

EXIT_OK, EXIT_USAGE, EXIT_ORACLE, EXIT_INTERNAL = 0, 2, 3, 4


class UsageError(Exception):
    pass


def parse_vector(text: str, cast=int) -> tuple:
    text = text.strip().strip("[]()")
    if not text:
        return ()
    try:
        return tuple(cast(x.strip()) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"cannot parse vector {text!r}") from exc


def _weight(rs, text: str) -> tuple:
    w = parse_vector(text)
    if len(w) != rs.rank:
        raise UsageError(f"{rs.name} weights need {rs.rank} coordinates, got {text!r}")
    return w


def _frac(x) -> str:
    return str(Fraction(x))


# ---------------------------------------------------------------------------
# commands; each returns (level for meta, result json, csv rows, pretty text)


def cmd_info(cfg: RunConfig, args):
    rs = build_root_system(cfg.lie_type)
    result = {
        "rank": rs.rank,
        "cartan": [list(r) for r in rs.cartan],
        "positive_roots": [list(r) for r in rs.positive_roots],
        "rho": list(rs.rho),
        "theta": list(rs.theta),
        "theta_coroot": list(rs.theta_coroot),
        "h_dual": rs.h_dual,
        "gram_weight": [[_frac(x) for x in row] for row in rs.gram_weight],
        "gram_coroot": [list(r) for r in rs.gram_coroot],
    }
    rows = [["key", "value"]] + [[k, json.dumps(v)] for k, v in result.items()]
    pretty = "\n".join(f"{k}: {v}" for k, v in result.items())
    return None, result, rows, pretty


def cmd_fold(cfg: RunConfig, args):
    rs = build_root_system(cfg.lie_type)
    if args.level is None or args.level < 1:
        raise UsageError("fold needs --level >= 1")
    xi = _weight(rs, args.weight)
    fo = affine_fold(rs, xi, args.level)
    result = {"weight": list(xi), **fo.to_dict()}
    rows = [["weight", "kind", "representative", "sign"],
            [json.dumps(list(xi)), fo.kind, json.dumps(list(fo.weight)) if fo.is_interior else "", fo.sign]]
    pretty = f"{list(xi)} -> " + (f"interior, sign {fo.sign:+d}, representative {list(fo.weight)}" if fo.is_interior else "boundary")
    return args.level, result, rows, pretty


def _fusion_json(el) -> list:
    return [[list(w), c] for w, c in el.coeffs.items()]


def cmd_fusion(cfg: RunConfig, args):
    rs = build_root_system(cfg.lie_type)
    lam, mu = _weight(rs, args.lam), _weight(rs, args.mu)
    prod = fusion(rs, lam, mu, cfg.k)
    result = {"lambda": list(lam), "mu": list(mu), "product": _fusion_json(prod)}
    if args.oracle == "smatrix":
        table, dev = verlinde_table(rs, cfg.k)
        if table[lam, mu] != prod:
            raise OracleDisagreement(f"Kac-Walton {prod} disagrees with Verlinde formula {table[lam, mu]}")
        result["oracle"] = {"name": "smatrix", "agrees": True, "max_deviation_below_1e-6": dev < 1e-6}
    rows = [["nu", "multiplicity"]] + [[json.dumps(list(w)), c] for w, c in prod.coeffs.items()]
    pretty = " + ".join(f"{c}*{list(w)}" for w, c in prod.coeffs.items()) or "0"
    return cfg.k, result, rows, pretty


def _fusion_row(lie_type: str, k: int, lam: tuple) -> list:
    rs = build_root_system(lie_type)
    return [(lam, mu, fusion(rs, lam, mu, k)) for mu in level_weights(rs, k)]


def cmd_fusion_table(cfg: RunConfig, args):
    rs = build_root_system(cfg.lie_type)
    lw = list(level_weights(rs, cfg.k))
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as ex:
            chunks = list(ex.map(_fusion_row, [cfg.lie_type] * len(lw), [cfg.k] * len(lw), lw))
    else:
        chunks = [_fusion_row(cfg.lie_type, cfg.k, lam) for lam in lw]
    entries = sorted((e for chunk in chunks for e in chunk), key=lambda e: (e[0], e[1]))
    result = {
        "weights": [list(w) for w in lw],
        "table": [{"lambda": list(a), "mu": list(b), "product": _fusion_json(p)} for a, b, p in entries],
    }
    if args.oracle == "smatrix":
        vt, dev = verlinde_table(rs, cfg.k)
        bad = [(a, b) for a, b, p in entries if vt[a, b] != p]
        if bad:
            raise OracleDisagreement(f"{len(bad)} entries disagree with the Verlinde formula, first {bad[0]}")
        result["oracle"] = {"name": "smatrix", "agrees": True, "max_deviation_below_1e-6": dev < 1e-6}
    rows = [["lambda", "mu", "nu", "multiplicity"]]
    for a, b, p in entries:
        for nu, c in p.coeffs.items():
            rows.append([json.dumps(list(a)), json.dumps(list(b)), json.dumps(list(nu)), c])
    pretty = "\n".join(f"{list(a)} x {list(b)} = " + (" + ".join(f"{c}*{list(n)}" for n, c in p.coeffs.items()) or "0")
                       for a, b, p in entries)
    return cfg.k, result, rows, pretty


def cmd_s_matrix(cfg: RunConfig, args):
    rs = build_root_system(cfg.lie_type)
    sm = s_matrix(rs, cfg.k, cfg.tolerance)
    ent = [[[round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0] for z in row] for row in sm.entries]
    result = {"weights": [list(w) for w in sm.weights], "entries_re_im": ent,
              "symmetric": sm.symmetry_defect() < cfg.tolerance, "unitary": sm.unitarity_defect() < cfg.tolerance}
    rows = [["row", "col", "re", "im"]] + [[i, j, v[0], v[1]] for i, r in enumerate(ent) for j, v in enumerate(r)]
    pretty = "\n".join("  ".join(f"{v[0]:+.6f}{v[1]:+.6f}i" for v in r) for r in ent)
    return cfg.k, result, rows, pretty


def cmd_fht_image(cfg: RunConfig, args):
    rs = build_root_system(cfg.lie_type)
    lam = _weight(rs, args.lam)
    img = fht_image(rs, lam, cfg.k, cfg.window)
    result = {"lambda": list(lam), "window": cfg.window, "character": img.to_json()}
    rows = [["weight", "multiplicity"]] + [[json.dumps(list(w)), m] for w, m in sorted(img.items())]
    pretty = "\n".join(f"{list(w)}: {m:+d}" for w, m in sorted(img.items()))
    return cfg.k, result, rows, pretty


def _group_elem(text: str, level: int) -> GroupElem:
    parts = text.split(";")
    if len(parts) not in (2, 3):
        raise UsageError(f"group element must be 't;eta[;z]', got {text!r}")
    t = parse_vector(parts[0], Fraction)
    eta = parse_vector(parts[1])
    z = Fraction(parts[2]) if len(parts) == 3 else Fraction(0)
    return GroupElem.make(t, eta, z, level)


def _elem_json(g: GroupElem) -> dict:
    return {"t": [_frac(c) for c in g.t.coords], "eta": list(g.eta), "z": _frac(g.z.value)}


def cmd_group_law(cfg: RunConfig, args):
    rs = build_root_system(cfg.lie_type)
    level = args.level or 1
    g1, g2 = _group_elem(args.g1, level), _group_elem(args.g2, level)
    for g in (g1, g2):
        if len(g.t.coords) != rs.rank or len(g.eta) != rs.rank:
            raise UsageError(f"group elements of {rs.name} need {rs.rank} coordinates")
    bas, triv = multiply(rs, g1, g2, "bas"), multiply(rs, g1, g2, "triv")
    lhs = psi(rs, bas)
    rhs = multiply(rs, psi(rs, g1), psi(rs, g2), "triv")
    result = {
        "g1": _elem_json(g1), "g2": _elem_json(g2),
        "product_bas": _elem_json(bas), "product_triv": _elem_json(triv),
        "sigma": sigma(rs, g1.eta, g2.eta),
        "psi_of_product": _elem_json(lhs), "product_of_psi": _elem_json(rhs),
        "psi_homomorphism_holds": lhs == rhs,
    }
    rows = [["key", "value"]] + [[k, json.dumps(v)] for k, v in result.items()]
    pretty = "\n".join(f"{k}: {v}" for k, v in result.items())
    return level, result, rows, pretty


def cmd_algebra(cfg: RunConfig, args):
    rs = build_root_system(cfg.lie_type)
    if not args.level:
        raise UsageError("algebra needs a nonzero --level")
    terms = {}
    for term_text in args.term or []:
        parts = term_text.split(";")
        if len(parts) not in (2, 3):
            raise UsageError(f"term must be 'eta;mu[;coeff]', got {term_text!r}")
        eta, mu = parse_vector(parts[0]), parse_vector(parts[1])
        if len(eta) != rs.rank or len(mu) != rs.rank:
            raise UsageError(f"terms of {rs.name} need {rs.rank} coordinates")
        terms[(eta, mu)] = terms.get((eta, mu), 0) + (int(parts[2]) if len(parts) == 3 else 1)
    a = ThetaElement(rs, args.level, terms)
    model = matrix_model(a, cfg.window)
    result = model.to_json()
    rows = [["coset", "row", "col", "value"]]
    for blk in result["blocks"]:
        for i, row in enumerate(blk["matrix"]):
            for j, v in enumerate(row):
                if v:
                    rows.append([json.dumps(blk["coset"]), i, j, v])
    pretty = "\n".join(f"coset {b['coset']}: {sum(1 for r in b['matrix'] for v in r if v)} nonzero entries"
                       for b in result["blocks"])
    return args.level, result, rows, pretty


def cmd_verify(cfg: RunConfig, args):
    for s in args.suite or []:
        if s not in verify_mod.SUITES:
            raise UsageError(f"unknown suite {s!r}; choose from {', '.join(verify_mod.SUITES)}")
    lie_type = cfg.lie_type if args.type_given else None
    k = cfg.k if args.k_given else None
    tasks = verify_mod.plan(args.suite, lie_type, k, args.level)
    report = verify_mod.run(tasks, cfg.seed, cfg.jobs)
    rows = [["suite", "config", "check", "passed", "failed"]]
    lines = []
    for suite, configs in report["suites"].items():
        for conf, checks in configs.items():
            for name, c in checks.items():
                rows.append([suite, conf, name, c["passed"], c["failed"]])
                lines.append(f"{'PASS' if not c['failed'] else 'FAIL'} {suite} {conf} {name}: {c['passed']} passed, {c['failed']} failed")
    lines.append(f"total: {report['passed']} passed, {report['failed']} failed")
    return k, report, rows, "\n".join(lines)


COMMANDS = {
    "info": cmd_info,
    "fold": cmd_fold,
    "fusion": cmd_fusion,
    "fusion-table": cmd_fusion_table,
    "s-matrix": cmd_s_matrix,
    "fht-image": cmd_fht_image,
    "group-law": cmd_group_law,
    "algebra": cmd_algebra,
    "verify": cmd_verify,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", dest="lie_type", help="Lie type, e.g. A2, G2, E8")
    common.add_argument("--k", type=int, help="level k (weights with B(lambda, theta) <= k)")
    common.add_argument("--window", type=int)
    common.add_argument("--tolerance", type=float)
    common.add_argument("--seed", type=int)
    common.add_argument("--jobs", type=int)
    common.add_argument("--format", dest="output", choices=["json", "csv", "pretty"])
    common.add_argument("--cache-dir")
    common.add_argument("--config", help="key=value config file; explicit flags win")

    p = _Parser(prog="fhtkit", description="Verlinde rings, affine Weyl folding and the inverse FHT map")
    p.add_argument("--version", action="version", version=f"fhtkit {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("info", parents=[common], help="root-system summary")
    sp = sub.add_parser("fold", parents=[common], help="affine alcove fold of a weight")
    sp.add_argument("--level", type=int, help="ell = k + h^vee")
    sp.add_argument("weight", help="fundamental-weight coordinates, e.g. 3 or 1,0")
    for name in ("fusion", "fusion-table"):
        sp = sub.add_parser(name, parents=[common])
        if name == "fusion":
            sp.add_argument("lam")
            sp.add_argument("mu")
        sp.add_argument("--oracle", choices=["none", "smatrix"], default="none")
    sub.add_parser("s-matrix", parents=[common])
    sp = sub.add_parser("fht-image", parents=[common])
    sp.add_argument("lam")
    sp = sub.add_parser("group-law", parents=[common], help="multiply two elements 't;eta;z' of T x| Pi^tau")
    sp.add_argument("--level", type=int, default=1)
    sp.add_argument("g1")
    sp.add_argument("g2")
    sp = sub.add_parser("algebra", parents=[common], help="block matrix model of a theta element")
    sp.add_argument("--level", type=int)
    sp.add_argument("--term", action="append", help="'eta;mu;coeff', repeatable")
    sp = sub.add_parser("verify", parents=[common], help="run invariant suites")
    sp.add_argument("--suite", action="append", help=f"one of {', '.join(verify_mod.SUITES)}; repeatable")
    sp.add_argument("--level", type=int)
    return p


def render(cfg: RunConfig, command: str, level, result, rows, pretty, lie_type=None) -> str:
    if cfg.output == "json":
        doc = {
            "meta": {"tool_version": __version__, "command": command, "lie_type": lie_type,
                     "level": level, "seed": cfg.seed},
            "result": result,
        }
        return json.dumps(doc, sort_keys=True, indent=1) + "\n"
    if cfg.output == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        return buf.getvalue()
    return pretty + "\n"


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        file_values = read_config_file(args.config) if args.config else {}
        flags = {k: getattr(args, k) for k in ("lie_type", "k", "window", "tolerance", "seed", "jobs", "output", "cache_dir")}
        args.type_given = args.lie_type is not None or "lie_type" in file_values
        args.k_given = args.k is not None or "k" in file_values
        cfg = merge(file_values, flags)
        if cfg.resolved_cache_dir():
            set_cache_dir(cfg.resolved_cache_dir())
        build_root_system(cfg.lie_type)
        level, result, rows, pretty = COMMANDS[args.command](cfg, args)
        meta_type = cfg.lie_type if args.command != "verify" or args.type_given else None
        sys.stdout.write(render(cfg, args.command, level, result, rows, pretty, meta_type))
        if args.command == "verify" and not result["all_passed"]:
            return EXIT_INTERNAL
        return EXIT_OK
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except (UsageError, RootSystemError, LevelError, WindowOverflowError, ValueError, KeyError, OSError) as exc:
        print(f"fhtkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OracleDisagreement as exc:
        print(f"fhtkit: oracle disagreement: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except (FoldGuardError, AssertionError) as exc:
        print(f"fhtkit: internal invariant failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
