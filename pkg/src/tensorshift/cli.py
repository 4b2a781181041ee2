"""Command-line front end.

    python -m tensorshift profile --weights const:1.0 --exponents 1,-1 --kmax 20
    python -m tensorshift census --exponents 1,-1 --kmax 30 --format csv
    python -m tensorshift verify --weights "prefix:1.0;tail:0.5" --exponents 1,-1 --kmax 100
    python -m tensorshift gap --weights "prefix:1.0;tail:0.5" --candidates "1,-1;1,1"
    python -m tensorshift lower-bound operators --exponents 1,1,-1 --seed 3
    python -m tensorshift lemmas --exponents "1,-1;1,1,-1" --kmax 15
    python -m tensorshift partition --k 4 --n 2

Exponent lists starting with a minus sign need the ``--exponents=-1,1`` form.
Exit status: 0 success, 1 failed assertion or golden mismatch, 2 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Sequence

from .indexcomb import BudgetExceeded, census, census_antisym, partitions_P, partitions_Q
from .serialize import (census_csv, compare_documents, dumps_json, loads_json, profile_csv,
                        report_csv, round_floats)
from .specnorm import norm_profile
from .verify import (find_gap, lower_bound_operators, lower_bound_vectors, run_lemma_suite,
                     verify_theorem)
from .weights import WeightSpecError, parse_exponents, parse_weightspec

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
GOLDEN_ATOL = 1e-9


@dataclass
class RunConfig:
    subcommand: str
    weights: str = "const:1.0"
    exponents: str = "1,-1"
    symmetry: str = "sym"
    k_min: int = 0
    k_max: int = 20
    eps: float = 0.1
    tol: float = 1e-10
    max_iter: int = 10_000
    seed: int = 0
    fmt: str = "json"
    output: str | None = None
    golden: str | None = None
    options: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, doc: dict) -> "RunConfig":
        return cls(**doc)

    def fingerprint(self) -> str:
        """Hash of everything that determines the numbers (not where they go)."""
        doc = self.to_dict()
        for key in ("fmt", "output", "golden"):
            doc.pop(key)
        blob = json.dumps(doc, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:12]


class UsageError(Exception):
    pass


def _exponent_list(text: str):
    return [parse_exponents(part) for part in text.split(";") if part.strip()]


def _float_list(text: str) -> list[list[float]]:
    out = []
    for part in text.split(";"):
        try:
            out.append([float(t) for t in part.split(",")])
        except ValueError:
            raise UsageError(f"bad vector {part!r}") from None
    return out


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad integer list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--weights", default="const:1.0",
                        help="const:L | prefix:a,b,...;tail:L | bergman | dirichlet | file:PATH")
    common.add_argument("--exponents", default="1,-1", help="comma-separated signed integers")
    common.add_argument("--symmetry", choices=["sym", "antisym"], default="sym")
    common.add_argument("--kmin", type=int, default=0)
    common.add_argument("--kmax", type=int, default=20)
    common.add_argument("--eps", type=float, default=0.1)
    common.add_argument("--tol", type=float, default=1e-10)
    common.add_argument("--max-iter", type=int, default=10_000)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--output", default=None)
    common.add_argument("--golden", default=None, metavar="DIR",
                        help="write a baseline if absent, else compare within 1e-9")

    parser = argparse.ArgumentParser(prog="tensorshift", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("profile", parents=[common], help="per-degree block norms")
    p = sub.add_parser("census", parents=[common], help="census set cardinalities")
    p.add_argument("--antisym", action="store_true")
    p.add_argument("--d", type=int, default=1)
    p = sub.add_parser("verify", parents=[common], help="norm equality experiment")
    p.add_argument("--slack", type=float, default=0.05)
    p = sub.add_parser("gap", parents=[common], help="search for a strict norm gap")
    p.add_argument("--candidates", default="1,-1;1,1;2,-2;1,-2",
                   help="semicolon-separated exponent tuples")
    p.add_argument("--margin", type=float, default=0.1)
    p = sub.add_parser("lower-bound", parents=[common], help="1/sqrt(n!) lower bounds")
    p.add_argument("mode", choices=["vectors", "operators"])
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--vectors", default=None, help="given vectors, e.g. '1,0;0,1'")
    p.add_argument("--probe-degrees", default="0,1,5")
    p.add_argument("--n-random", type=int, default=100)
    p = sub.add_parser("lemmas", parents=[common], help="census lemma suite")
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--d", type=int, default=1)
    p = sub.add_parser("partition", parents=[common], help="P(k, n) and Q(k, n)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    return parser


_OPTION_KEYS = {
    "census": ("antisym", "d"),
    "verify": ("slack",),
    "gap": ("candidates", "margin"),
    "lower-bound": ("mode", "trials", "vectors", "probe_degrees", "n_random"),
    "lemmas": ("n_max", "d"),
    "partition": ("k", "n"),
}


def config_from_args(args: argparse.Namespace) -> RunConfig:
    options = {k: getattr(args, k) for k in _OPTION_KEYS.get(args.subcommand, ())}
    return RunConfig(subcommand=args.subcommand, weights=args.weights, exponents=args.exponents,
                     symmetry=args.symmetry, k_min=args.kmin, k_max=args.kmax, eps=args.eps,
                     tol=args.tol, max_iter=args.max_iter, seed=args.seed, fmt=args.format,
                     output=args.output, golden=args.golden, options=options)


def execute(cfg: RunConfig) -> tuple[dict, str | None, bool]:
    """Run one configuration; returns ``(document, csv text or None, passed)``."""
    opt = cfg.options
    cmd = cfg.subcommand
    if cmd == "partition":
        k, n = opt["k"], opt["n"]
        if n < 1:
            raise UsageError(f"n must be positive, got {n}")
        doc = {"k": k, "n": n, "P": partitions_P(k, n), "Q": partitions_Q(k, n)}
        return doc, None, True

    w = parse_weightspec(cfg.weights)
    if cmd == "lemmas":
        ls = _exponent_list(cfg.exponents)
        rep = run_lemma_suite(opt["n_max"], cfg.k_max, ls, [w], [cfg.eps], d=opt["d"])
        return rep.to_dict(), None, rep.passed
    if cmd == "gap":
        rep = find_gap(w, _exponent_list(opt["candidates"]), cfg.symmetry, cfg.k_max, cfg.tol,
                       opt["margin"], cfg.max_iter)
        return rep.to_dict(), None, rep.passed
    l = parse_exponents(cfg.exponents)
    if cmd == "profile":
        prof = norm_profile(w, l, cfg.symmetry, cfg.k_max, cfg.tol, cfg.max_iter)
        doc = prof.to_dict()
        return doc, profile_csv(round_floats(doc)), True
    if cmd == "census":
        lo, hi = cfg.k_min, cfg.k_max
        if opt["antisym"]:
            rep = census_antisym(l.n, l, opt["d"], (lo, hi), cfg.eps, w)
        else:
            rep = census(l.n, l, (lo, hi), cfg.eps, w)
        doc = rep.to_dict()
        ratios = [r.ratios(l.n) for r in rep.records]
        doc["ratios"] = ratios
        doc["invariants_hold"] = rep.check_invariants()
        return doc, census_csv(round_floats(doc), round_floats(ratios)), doc["invariants_hold"]
    if cmd == "verify":
        rep = verify_theorem(w, l, cfg.symmetry, cfg.k_max, cfg.tol, opt["slack"], cfg.max_iter)
        return rep.to_dict(), None, rep.passed
    if cmd == "lower-bound":
        if opt["mode"] == "vectors":
            xs = _float_list(opt["vectors"]) if opt["vectors"] else None
            rep = lower_bound_vectors(xs, opt["trials"], cfg.seed)
        else:
            rep = lower_bound_operators(w, l, _int_list(opt["probe_degrees"]), cfg.seed,
                                        opt["n_random"])
        return rep.to_dict(), None, rep.passed
    raise UsageError(f"unknown subcommand {cmd!r}")


def _check_golden(cfg: RunConfig, doc: dict) -> list[str]:
    path = Path(cfg.golden) / f"{cfg.subcommand}-{cfg.fingerprint()}.json"
    if not path.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(dumps_json(doc))
        print(f"golden baseline written to {path}", file=sys.stderr)
        return []
    return compare_documents(loads_json(path.read_text())["result"], round_floats(doc["result"]),
                             GOLDEN_ATOL, "result")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    cfg = config_from_args(args)
    try:
        result, table, passed = execute(cfg)
    except WeightSpecError as exc:
        print(f"tensorshift: error: bad token {exc.token!r}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ValueError, BudgetExceeded) as exc:
        print(f"tensorshift: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    doc = {"config": cfg.to_dict(), "result": result}
    status = EXIT_OK if passed else EXIT_FAIL
    if cfg.golden:
        mismatches = _check_golden(cfg, doc)
        if mismatches:
            print("golden mismatch at: " + ", ".join(mismatches[:10]), file=sys.stderr)
            status = EXIT_FAIL

    if cfg.fmt == "csv":
        text = table if table is not None else report_csv(round_floats(result))
    else:
        text = dumps_json(doc)
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)
    return status


def entry() -> None:
    sys.exit(main())
