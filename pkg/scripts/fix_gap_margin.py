"""Fix the gap margin for the non-regular witness search with the brute-force oracle.

The oracle assembles each block from explicit shift matrices on the
truncated full tensor space, so the margin does not depend on the graded
block code it is later used to test.  The stored margin is half the best
relative gap the oracle finds up to degree ``--kmax``.
"""

import argparse
import json
from pathlib import Path

from tensorshift import oracles
from tensorshift.specnorm import full_tensor_norm
from tensorshift.weights import parse_exponents, parse_weightspec

CANDIDATES = "1,-1;1,1;2,-2;1,-2"
GOLDEN = Path(__file__).resolve().parents[1] / "tests" / "golden" / "gap_margin.json"


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--weights", default="prefix:1.0;tail:0.5")
    ap.add_argument("--candidates", default=CANDIDATES)
    ap.add_argument("--symmetry", default="sym")
    ap.add_argument("--kmax", type=int, default=30)
    ap.add_argument("--fraction", type=float, default=0.5)
    ap.add_argument("--output", default=str(GOLDEN))
    ap.add_argument("--force", action="store_true")
    args = ap.parse_args()

    out = Path(args.output)
    if out.exists() and not args.force:
        print(f"{out} exists; pass --force to overwrite")
        return
    w = parse_weightspec(args.weights)
    rows = []
    for part in args.candidates.split(";"):
        l = parse_exponents(part)
        full = full_tensor_norm(w, l)
        best = oracles.profile_max(w, l, args.symmetry, args.kmax)
        rel = (full - best) / full if full > 0 else 0.0
        rows.append({"exponents": list(l.entries), "full_tensor_norm": full,
                     "oracle_max": best, "relative_gap": rel})
        print(f"{part:>8}  full={full:.12g}  oracle max={best:.12g}  rel gap={rel:.12g}")
    top = max(r["relative_gap"] for r in rows)
    doc = {"weights": args.weights, "symmetry": args.symmetry, "oracle_kmax": args.kmax,
           "fraction": args.fraction, "oracle_best_relative_gap": top,
           "margin": args.fraction * top, "candidates": rows}
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(doc, indent=2) + "\n")
    print(f"margin = {doc['margin']:.12g} -> {out}")


if __name__ == "__main__":
    main()
