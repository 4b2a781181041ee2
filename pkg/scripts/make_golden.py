"""Record first-run regression baselines under tests/golden/.

* profile maxima for Hardy weights, exponents (1,-1), both symmetries,
  after confirming against the brute-force oracle that the low-degree
  block norms grow;
* the constant-0.5, (1,1,-1), wedge profile max at k_max=40;
* census ratios #A~/P and #A~'/W over k in [20, 60] (Hardy, eps=0.1).

Existing files are left alone unless --force is given.
"""

import argparse
import json
from pathlib import Path

import numpy as np

from tensorshift import oracles
from tensorshift.indexcomb import census, census_antisym
from tensorshift.specnorm import norm_profile
from tensorshift.weights import WeightSequence

GOLDEN = Path(__file__).resolve().parents[1] / "tests" / "golden"


def _write(name, doc, force):
    path = GOLDEN / name
    if path.exists() and not force:
        print(f"keep {path}")
        return
    path.write_text(json.dumps(doc, indent=2) + "\n")
    print(f"wrote {path}")


def profiles(force):
    hardy = WeightSequence.constant(1.0)
    doc = {"weights": "const:1.0", "exponents": [1, -1], "k_max": 300, "oracle_kmax": 8}
    for sym in ("symmetric", "antisymmetric"):
        low = [oracles.block_norm(hardy, (1, -1), k, sym) for k in range(9)]
        prof = norm_profile(hardy, (1, -1), sym, 300)
        assert np.allclose(low, prof.norms[:9], atol=1e-12), "graded blocks disagree with oracle"
        # wedge norms alternate with the parity of k; each parity class grows
        steps = [(b - a) for a, b in zip(low[2::2], low[4::2])] + \
                [(b - a) for a, b in zip(low[3::2], low[5::2])]
        assert min(steps) > 0, f"{sym}: low-degree block norms do not grow"
        doc[sym] = {"max_norm": prof.max_norm, "argmax_k": prof.argmax_k,
                    "oracle_norms": low}
        print(f"{sym:>14}: max {prof.max_norm:.15g} at k={prof.argmax_k}")
    _write("theorem_hardy.json", doc, force)

    half = WeightSequence.constant(0.5)
    prof = norm_profile(half, (1, 1, -1), "antisymmetric", 40)
    _write("theorem_half_wedge.json",
           {"weights": "const:0.5", "exponents": [1, 1, -1], "symmetry": "antisymmetric",
            "k_max": 40, "max_norm": prof.max_norm, "argmax_k": prof.argmax_k}, force)


def ratios(force):
    hardy = WeightSequence.constant(1.0)
    sym = census(2, (1, -1), (20, 60), 0.1, hardy)
    anti = census_antisym(2, (1, -1), 1, (20, 60), 0.1, hardy)
    r_sym = [r.A_tilde / r.P for r in sym.records]
    r_anti = [r.A_tilde_prime / r.W for r in anti.records]
    mono = lambda xs: all(b >= a for a, b in zip(xs, xs[1:]))
    doc = {"weights": "const:1.0", "exponents": [1, -1], "eps": 0.1, "d": 1, "k_range": [20, 60],
           "threshold": 0.8,
           "sym_ratio": r_sym, "antisym_ratio": r_anti,
           "sym_ratio_at_60": r_sym[-1], "antisym_ratio_at_60": r_anti[-1],
           "sym_non_decreasing": mono(r_sym), "antisym_non_decreasing": mono(r_anti)}
    print(f"sym ratio at 60 {r_sym[-1]:.6f} monotone={doc['sym_non_decreasing']}; "
          f"antisym ratio at 60 {r_anti[-1]:.6f} monotone={doc['antisym_non_decreasing']}")
    _write("census_ratios.json", doc, force)


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--force", action="store_true")
    args = ap.parse_args()
    GOLDEN.mkdir(parents=True, exist_ok=True)
    profiles(args.force)
    ratios(args.force)


if __name__ == "__main__":
    main()
