"""Scenario runners: norm equality experiments, lower bounds and census lemmas.

Every runner returns a :class:`VerificationReport`.  A verdict is ``True``,
``False`` or ``None`` (hypothesis of the statement not met, so the check
does not apply); the report passes when no verdict is ``False``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .indexcomb import (census, census_antisym, enumerate_spread, growth_check,
                        repeated_entry_exhaustive, n_set, partitions_P, r_set, w_frak_members,
                        gamma_good, e_buckets)
from .specnorm import DEFAULT_MAX_ITER, DEFAULT_TOL, full_tensor_norm, norm_profile
from .tensorblocks import (apply_shift_power, build_sym_block, normalize_symmetry,
                           sym_basis_norm, sym_tensor_vectors, vector_norm)
from .weights import ExponentTuple, WeightSequence, beta, is_regular

UPPER_TOL = 1e-9
DEFAULT_SLACK = 0.05


@dataclass
class VerificationReport:
    scenario: str
    inputs: dict[str, Any] = field(default_factory=dict)
    quantities: dict[str, Any] = field(default_factory=dict)
    verdicts: dict[str, bool | None] = field(default_factory=dict)
    tolerances: dict[str, float] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v is not False for v in self.verdicts.values())

    @property
    def failures(self) -> list[str]:
        return [k for k, v in self.verdicts.items() if v is False]

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "inputs": self.inputs,
            "quantities": self.quantities,
            "verdicts": self.verdicts,
            "tolerances": self.tolerances,
            "notes": list(self.notes),
            "passed": self.passed,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "VerificationReport":
        return cls(scenario=doc["scenario"], inputs=dict(doc["inputs"]),
                   quantities=dict(doc["quantities"]), verdicts=dict(doc["verdicts"]),
                   tolerances=dict(doc["tolerances"]), notes=list(doc["notes"]))


# -- test vector -------------------------------------------------------------

@dataclass(frozen=True)
class TestVectorBound:
    k: int
    eps: float
    P: int
    A_tilde: int
    image_norm: float
    analytic_floor: float


def testvector_lower_bound(w: WeightSequence, l, k: int, eps: float = 0.1) -> TestVectorBound:
    """Image of the uniform unit vector over degree-``k`` classes, and its floor.

    In orthonormal coordinates the vector has every entry ``1/sqrt(P(k, n))``.
    The floor ``sqrt(#A~/P) (1 - eps)^{|l|}`` comes from the census of
    full-count, well-weighted target classes.
    """
    l = ExponentTuple.of(l)
    block = build_sym_block(w, l, k)
    P = block.shape[1]
    if P == 0:
        return TestVectorBound(k, eps, 0, 0, 0.0, 0.0)
    image = block.to_dense() @ np.full(P, 1.0 / math.sqrt(P))
    A_tilde = census(l.n, l, (k, k), eps, w).records[0].A_tilde
    floor = math.sqrt(A_tilde / P) * (1 - eps) ** l.abs_sum
    return TestVectorBound(k, eps, P, A_tilde, float(np.linalg.norm(image)), floor)


# -- norm equality -----------------------------------------------------------

def verify_theorem(w: WeightSequence, l, symmetry: str, k_max: int, tol: float = DEFAULT_TOL,
                   slack: float = DEFAULT_SLACK, max_iter: int = DEFAULT_MAX_ITER,
                   workers: int = 1) -> VerificationReport:
    """Compare the profile max with the product of power norms and with ``lam^{|l|}``.

    Assertion A (upper bound) is unconditional.  Assertion B asks, for a
    regular weight, that the profile max comes within ``slack`` (relative)
    of ``lam^{|l|}``; equality only holds in the limit of large degree.
    """
    l = ExponentTuple.of(l)
    symmetry = normalize_symmetry(symmetry)
    reg = is_regular(w)
    prof = norm_profile(w, l, symmetry, k_max, tol, max_iter, workers)
    full = prof.product_of_power_norms
    pred = prof.limit_prediction
    best = prof.max_norm
    rep = VerificationReport(
        scenario="theorem",
        inputs={"weights": w.describe(), "exponents": list(l.entries), "symmetry": symmetry,
                "k_max": k_max},
        tolerances={"tol": tol, "upper": UPPER_TOL, "slack": slack, "max_iter": max_iter},
    )
    rep.quantities = {
        "regular": bool(reg),
        "regularity_witness": reg.witness,
        "profile_max": best,
        "argmax_k": prof.argmax_k,
        "full_tensor_norm": full,
        "lambda_power": pred,
        "relative_gap": (full - best) / full if full > 0 else 0.0,
    }
    rep.verdicts["upper_bound"] = best <= full + UPPER_TOL
    rep.verdicts["approaches_limit"] = best >= (1 - slack) * pred if reg else None
    if not reg:
        if abs(full - best) <= UPPER_TOL:
            rep.notes.append("weight is not regular, yet this exponent tuple attains the product "
                             "of power norms; non-regularity breaks equality only for some tuples")
        else:
            rep.notes.append("weight is not regular and the profile max stays below the product "
                             "of power norms")
    return rep


def find_gap(w: WeightSequence, candidates: Sequence, symmetry: str, k_max: int,
             tol: float = DEFAULT_TOL, margin: float = 0.1,
             max_iter: int = DEFAULT_MAX_ITER, workers: int = 1) -> VerificationReport:
    """Search candidate exponent tuples for a strict norm gap on a non-regular weight."""
    if is_regular(w):
        raise ValueError("find_gap needs a weight that is not regular")
    cands = [ExponentTuple.of(c) for c in candidates]
    if not cands:
        raise ValueError("candidate list is empty")
    symmetry = normalize_symmetry(symmetry)
    rows = []
    for l in cands:
        prof = norm_profile(w, l, symmetry, k_max, tol, max_iter, workers)
        full = prof.product_of_power_norms
        gap = full - prof.max_norm
        rows.append({"exponents": list(l.entries), "full_tensor_norm": full,
                     "profile_max": prof.max_norm, "gap": gap,
                     "relative_gap": gap / full if full > 0 else 0.0})
    best = max(range(len(rows)), key=lambda r: (rows[r]["relative_gap"], -r))
    rep = VerificationReport(
        scenario="gap",
        inputs={"weights": w.describe(), "candidates": [list(c.entries) for c in cands],
                "symmetry": symmetry, "k_max": k_max},
        quantities={"candidates": rows, "best": rows[best]["exponents"],
                    "best_relative_gap": rows[best]["relative_gap"]},
        tolerances={"tol": tol, "margin": margin, "max_iter": max_iter},
    )
    rep.verdicts["gap_exceeds_margin"] = rows[best]["relative_gap"] >= margin
    return rep


# -- 1/sqrt(n!) lower bounds -------------------------------------------------

def _vector_instance(xs) -> dict:
    n = len(xs)
    lhs = math.prod(vector_norm(x) for x in xs) / math.sqrt(math.factorial(n))
    value = sym_tensor_vectors(xs).norm
    return {"n": n, "lhs": lhs, "norm": value, "slack": value - lhs}


def _random_vector(rng: np.random.Generator, max_support: int) -> list[float]:
    size = int(rng.integers(1, max_support + 1))
    return rng.standard_normal(size).tolist()


def lower_bound_vectors(xs: Sequence | None = None, trials: int = 1000, seed: int = 0,
                        max_support: int = 5, tol: float = UPPER_TOL) -> VerificationReport:
    """``||x_1 (.) ... (.) x_n|| >= prod ||x_i|| / sqrt(n!)`` on given and random vectors."""
    rng = np.random.default_rng(seed)
    instances = []
    if xs is not None:
        instances.append(_vector_instance(list(xs)))
    for _ in range(trials):
        n = int(rng.choice([2, 3]))
        instances.append(_vector_instance([_random_vector(rng, max_support) for _ in range(n)]))
    slacks = [r["slack"] for r in instances]
    rep = VerificationReport(
        scenario="lower-bound-vectors",
        inputs={"trials": trials, "seed": seed, "max_support": max_support,
                "given": [list(map(float, x)) for x in xs] if xs is not None else None},
        quantities={"instances": len(instances), "min_slack": min(slacks) if slacks else 0.0},
        tolerances={"slack": tol},
    )
    if xs is not None:
        rep.quantities["given"] = instances[0]
    rep.verdicts["lower_bound"] = all(s >= -tol for s in slacks)
    return rep


def lower_bound_operators(w: WeightSequence, l, probe_degrees: Sequence[int] = (0, 1, 5),
                          seed: int = 0, n_random: int = 100, max_support: int = 5,
                          tol: float = UPPER_TOL) -> VerificationReport:
    """``prod ||S_{l_i} x|| / sqrt(n!) <= ||S_{l_1}x (.) ... (.) S_{l_n}x|| <= ||T||``.

    ``x^{(.)n}`` is a unit vector living in degrees up to ``n * max(supp x)``,
    so the profile max over those degrees already dominates the middle term.
    """
    l = ExponentTuple.of(l)
    rng = np.random.default_rng(seed)
    probes: list[dict[int, float]] = [{int(d): 1.0} for d in probe_degrees]
    for _ in range(n_random):
        v = rng.standard_normal(int(rng.integers(1, max_support + 1)))
        v /= np.linalg.norm(v)
        probes.append({i: float(c) for i, c in enumerate(v)})
    top = max((max(p) for p in probes), default=0)
    k_max = l.n * top
    ceiling = norm_profile(w, l, "symmetric", k_max).max_norm
    lhs_all, mid_all = [], []
    for x in probes:
        images = [apply_shift_power(w, t, x) for t in l]
        lhs = math.prod(vector_norm(y) for y in images) / math.sqrt(math.factorial(l.n))
        mid = sym_tensor_vectors([y if y else {0: 0.0} for y in images]).norm
        lhs_all.append(lhs)
        mid_all.append(mid)
    rep = VerificationReport(
        scenario="lower-bound-operators",
        inputs={"weights": w.describe(), "exponents": list(l.entries),
                "probe_degrees": list(probe_degrees), "seed": seed, "n_random": n_random,
                "max_support": max_support},
        quantities={"probes": len(probes), "k_max": k_max, "profile_max": ceiling,
                    "max_lhs": max(lhs_all), "max_image_norm": max(mid_all),
                    "min_slack": min(ceiling - a for a in lhs_all),
                    "basis_probes": [{"degree": int(d), "lhs": lhs_all[i]}
                                     for i, d in enumerate(probe_degrees)]},
        tolerances={"slack": tol},
    )
    rep.verdicts["vector_bound"] = all(a <= b + tol for a, b in zip(lhs_all, mid_all))
    rep.verdicts["operator_bound"] = all(b <= ceiling + tol for b in mid_all)
    return rep


# -- census lemmas -----------------------------------------------------------

def _lam_one_regular(w: WeightSequence) -> bool:
    return bool(is_regular(w)) and abs(w.lam - 1.0) < 1e-12


def _ratio_trend(ratios: dict[int, float]) -> tuple[bool, float, float]:
    """The deficit ``1 - r`` shrinks toward 0.

    Its mean over the upper half of the range must be below its mean over
    the lower half (or already zero), and the last ratio must not fall below
    the first.  Means rather than single values absorb parity oscillation.
    """
    ks = sorted(ratios)
    mid = ks[len(ks) // 2]
    lo_def = [1 - ratios[k] for k in ks if k < mid]
    hi_def = [1 - ratios[k] for k in ks if k >= mid]
    lower, upper = sum(lo_def) / len(lo_def), sum(hi_def) / len(hi_def)
    shrinking = upper < lower or upper <= 1e-12
    return shrinking and ratios[ks[-1]] >= ratios[ks[0]], lower, upper


def _trend_verdict(rep: VerificationReport, key: str, ratios: dict[int, float], k_max: int) -> None:
    rep.quantities[f"{key} ratio"] = ratios[k_max]
    if not any(ratios.values()):
        # the good set is empty on the whole range: too early to say anything
        rep.verdicts[key] = None
        rep.notes.append(f"{key}: ratio is 0 for every degree up to {k_max}")
        return
    ok, lower, upper = _ratio_trend(ratios)
    rep.verdicts[key] = ok
    rep.quantities[f"{key} deficits"] = [lower, upper]


def check_basis_norm_bound(l: ExponentTuple, k: int) -> tuple[bool, int]:
    """``||e_<i>|| <= #N_{j,i} M / (n! sqrt(n!))`` for full-count ``j`` and ``<i>`` in ``R_j``."""
    n = l.n
    denom = math.factorial(n) * math.sqrt(math.factorial(n))
    checked = 0
    for j in e_buckets(k + l.signed_sum, l)[l.M]:
        for i in r_set(j, l):
            checked += 1
            if sym_basis_norm(i) > len(n_set(j, i, l)) * l.M / denom + 1e-12:
                return False, checked
    return True, checked


def check_beta_floor(w: WeightSequence, l: ExponentTuple, k: int, eps: float) -> tuple[bool, int]:
    """``|beta(i_a, l_pi(a))| > (1 - eps)^{|l_pi(a)|}`` whenever ``pi`` carries ``<i>`` onto a good ``j``."""
    checked = 0
    for j in e_buckets(k + l.signed_sum, l)[l.M]:
        if not gamma_good(w, j, l, eps):
            continue
        for i in r_set(j, l):
            for pi in n_set(j, i, l):
                checked += 1
                for a in range(l.n):
                    t = l[pi[a]]
                    b = abs(beta(w, i[a], t))
                    # a zero exponent gives beta = 1 = (1 - eps)^0: equality, not excess
                    if not (b > (1 - eps) ** abs(t) if t else b >= 1.0):
                        return False, checked
    return True, checked


def wedge_inner(a: Sequence[int], b: Sequence[int]) -> float:
    """``<e_a1 ^ ... ^ e_an, e_b1 ^ ... ^ e_bn> = det[delta(a_r, b_s)] / n!``."""
    n = len(a)
    G = np.array([[1.0 if x == y else 0.0 for y in b] for x in a])
    return float(np.linalg.det(G)) / math.factorial(n)


def check_wedge_orthogonality(l: ExponentTuple, r: int, d: int) -> tuple[bool, int]:
    """Spread tuples are orthogonal to every other member of the perturbed family."""
    spread = [tuple(s) for s in enumerate_spread(r, l.n, d, 4 * l.abs_sum)]
    spread_set = set(spread)
    others = [j for j in w_frak_members(r, l, d) if j not in spread_set]
    checked = 0
    for jp in spread:
        for j in others:
            checked += 1
            if abs(wedge_inner(jp, j)) > 1e-12:
                return False, checked
    return True, checked


def run_lemma_suite(n_max: int, k_max: int, l_list: Sequence, w_list: Sequence[WeightSequence],
                    eps_list: Sequence[float] = (0.1,), d: int = 1,
                    ratio_k: int = 200) -> VerificationReport:
    """Instance-exhaustive and ratio checks of the census lemmas.

    Verdict keys name the lemma, the exponent tuple and, where relevant, the
    weight and ``eps``.  Hypothesis gates: the counting bounds need ``l`` not
    all equal; the good/bad split bounds need a regular weight with limit 1.
    """
    ls = [ExponentTuple.of(l) for l in l_list]
    ls = [l for l in ls if l.n <= n_max]
    rep = VerificationReport(
        scenario="lemmas",
        inputs={"n_max": n_max, "k_max": k_max, "exponents": [list(l.entries) for l in ls],
                "weights": [w.describe() for w in w_list], "eps": list(eps_list), "d": d,
                "ratio_k": ratio_k},
        tolerances={"ratio_low": 0.9, "ratio_high": 1.0, "growth_factor": 4.0},
    )
    V, Q = rep.verdicts, rep.quantities

    for n in range(1, n_max + 1):
        ratio = partitions_P(ratio_k, n) / partitions_P(ratio_k + 1, n)
        Q[f"partition_ratio n={n}"] = ratio
        V[f"partition_ratio n={n}"] = 0.9 <= ratio <= 1.0

    for l in ls:
        tag = ",".join(map(str, l.entries))
        varied = not l.all_equal
        if varied:
            ok, count = repeated_entry_exhaustive(l, max_entry=k_max)
            V[f"repeated_entry l={tag}"], Q[f"repeated_entry l={tag} instances"] = ok, count
            ok, count = True, 0
            for k in range(k_max + 1):
                o, c = check_basis_norm_bound(l, k)
                ok, count = ok and o, count + c
            V[f"basis_norm_bound l={tag}"], Q[f"basis_norm_bound l={tag} instances"] = ok, count
        else:
            V[f"class_growth l={tag}"] = V[f"repeated_entry l={tag}"] = V[f"basis_norm_bound l={tag}"] = None
            V[f"wedge_class_growth l={tag}"] = None

        ok, count = True, 0
        for r in range(k_max + 1):
            o, c = check_wedge_orthogonality(l, r, d)
            ok, count = ok and o, count + c
        V[f"wedge_orthogonality l={tag}"], Q[f"wedge_orthogonality l={tag} pairs"] = ok, count

        plain = census(l.n, l, (1, k_max), eps_list[0], None)
        if varied:
            g = growth_check({r.k: r.A for r in plain.records}, l.n - 2)
            V[f"class_growth l={tag}"], Q[f"class_growth l={tag} constant"] = g.ok, g.constant_full
        anti = census_antisym(l.n, l, d, (1, k_max), eps_list[0], None)
        g = growth_check({r.k: r.W_frak - r.W_prime for r in anti.records}, l.n - 2)
        V[f"spread_growth l={tag}"], Q[f"spread_growth l={tag} constant"] = g.ok, g.constant_full
        if varied:
            g = growth_check({r.k: r.A_cal for r in anti.records}, l.n - 2)
            V[f"wedge_class_growth l={tag}"] = g.ok
            Q[f"wedge_class_growth l={tag} constant"] = g.constant_full

        for w in w_list:
            for eps in eps_list:
                key = f"l={tag} w={w.describe()} eps={eps:g}"
                ok, count = True, 0
                for k in range(k_max + 1):
                    o, c = check_beta_floor(w, l, k, eps)
                    ok, count = ok and o, count + c
                V[f"beta_floor {key}"], Q[f"beta_floor {key} instances"] = ok, count
                if not _lam_one_regular(w):
                    for name in ("bad_class_growth", "good_class_ratio", "wedge_bad_growth",
                                 "wedge_good_ratio"):
                        V[f"{name} {key}"] = None
                    continue
                sym = census(l.n, l, (1, k_max), eps, w)
                g = growth_check({r.k: r.A_check for r in sym.records}, l.n - 2)
                V[f"bad_class_growth {key}"] = g.ok
                Q[f"bad_class_growth {key} constant"] = g.constant_full
                ratios = {r.k: r.A_tilde / r.P for r in sym.records}
                _trend_verdict(rep, f"good_class_ratio {key}", ratios, k_max)
                asym = census_antisym(l.n, l, d, (1, k_max), eps, w)
                g = growth_check({r.k: r.A_check for r in asym.records}, l.n - 2)
                V[f"wedge_bad_growth {key}"] = g.ok
                Q[f"wedge_bad_growth {key} constant"] = g.constant_full
                ratios = {r.k: (r.A_tilde_prime / r.W if r.W else 0.0) for r in asym.records}
                _trend_verdict(rep, f"wedge_good_ratio {key}", ratios, k_max)
    return rep
