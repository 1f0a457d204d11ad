"""Compare the orbit-sum image of each generator with the assembly-side character.

For every level weight, prints the support size of the window-truncated image,
the margin used, and whether both sides agree on the inner box.
"""

from __future__ import annotations

import argparse

from fhtkit.characters import restrict_to_alcove
from fhtkit.fht_map import assembly_character, assembly_margin, fht_image, inverse_fht
from fhtkit.rootsystem import build_root_system
from fhtkit.verlinde import FusionElement, level_weights


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--type", default="A2")
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--window", type=int, default=10)
    args = ap.parse_args(argv)
    rs = build_root_system(args.type)
    ell = args.k + rs.h_dual
    bad = 0
    print(f"{rs.name}, k={args.k}, level {ell}, window {args.window}")
    print(f"{'lambda':>10} {'terms':>6} {'margin':>6} {'assembly':>9} {'round trip':>11}")
    for lam in level_weights(rs, args.k):
        img = fht_image(rs, lam, args.k, args.window)
        margin = assembly_margin(rs, lam)
        inner = args.window - margin
        same = assembly_character(rs, lam, args.k, args.window).truncate(inner) == img.truncate(inner)
        back = inverse_fht(restrict_to_alcove(rs, img, ell, args.window)) == FusionElement.basis(args.k, lam)
        bad += not (same and back)
        print(f"{str(list(lam)):>10} {len(img):>6} {margin:>6} {'ok' if same else 'FAIL':>9} {'ok' if back else 'FAIL':>11}")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
