"""Tabulate good-class ratios for the symmetric and antisymmetric censuses.

Writes one CSV row per degree with the symmetric ratio #A~/P and the
antisymmetric ratio #A~'/W, ready for external plotting.  Odd and even
degrees are listed together; the symmetric ratio alternates between them.
"""

import argparse
import sys

from tensorshift.indexcomb import census, census_antisym
from tensorshift.serialize import write_table
from tensorshift.weights import parse_exponents, parse_weightspec


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--weights", default="const:1.0")
    ap.add_argument("--exponents", default="1,-1")
    ap.add_argument("--eps", type=float, default=0.1)
    ap.add_argument("--d", type=int, default=1)
    ap.add_argument("--kmin", type=int, default=1)
    ap.add_argument("--kmax", type=int, default=80)
    ap.add_argument("--output", default=None)
    args = ap.parse_args()

    w = parse_weightspec(args.weights)
    l = parse_exponents(args.exponents)
    span = (args.kmin, args.kmax)
    sym = census(l.n, l, span, args.eps, w).records
    anti = census_antisym(l.n, l, args.d, span, args.eps, w).records
    rows = [[s.k, s.P, s.A_tilde, s.A_tilde / s.P if s.P else 0.0,
             a.W, a.A_tilde_prime, a.A_tilde_prime / a.W if a.W else 0.0]
            for s, a in zip(sym, anti)]
    text = write_table(["k", "P", "A_tilde", "sym_ratio", "W", "A_tilde_prime", "antisym_ratio"], rows)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
