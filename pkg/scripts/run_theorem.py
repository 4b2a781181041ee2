"""Norm profile against its predicted limit for a few regular weights.

For each weight and exponent tuple, prints the profile max at several
degree cutoffs next to lam^{|l|}, showing how slowly the block norms close
the gap.  The Hardy case (1,-1) has the closed form cos(pi/(k+2)).
"""

import argparse

from tensorshift.specnorm import norm_profile
from tensorshift.weights import parse_exponents, parse_weightspec

CASES = [("const:1.0", "1,-1"), ("const:1.0", "1,1,-1"), ("const:0.5", "1,1,-1"),
         ("bergman", "1,-1")]


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--kmax", type=int, default=120)
    ap.add_argument("--symmetry", choices=["sym", "antisym"], default="sym")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    cuts = sorted({args.kmax // 8, args.kmax // 4, args.kmax // 2, args.kmax})
    print(f"{'weights':>10} {'exponents':>10} {'limit':>10}  " + "  ".join(f"k<={c:<5}" for c in cuts))
    for spec, exps in CASES:
        w = parse_weightspec(spec)
        l = parse_exponents(exps)
        prof = norm_profile(w, l, args.symmetry, args.kmax, workers=args.workers)
        run = prof.running_max()
        print(f"{spec:>10} {exps:>10} {prof.limit_prediction:>10.6f}  "
              + "  ".join(f"{run[c]:.6f}" for c in cuts))


if __name__ == "__main__":
    main()
