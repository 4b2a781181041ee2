"""Largest singular values of degree blocks and per-degree norm profiles."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .tensorblocks import DENSE_THRESHOLD, GradedBlock, build_block, normalize_symmetry
from .weights import ExponentTuple, WeightSequence, power_norm

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 10_000
FALLBACK_SEED = 0


def power_iteration(matrix, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> tuple[float, int]:
    """Largest singular value by power iteration on ``B^T B``.

    Starts from the normalised all-ones vector; if that lies in the kernel
    (first Rayleigh quotient exactly zero) restarts once from a seeded
    Gaussian vector.  Stops when successive Rayleigh quotients differ by
    less than ``tol``.
    """
    m = matrix.shape[1]
    if m == 0 or matrix.shape[0] == 0:
        return 0.0, 0
    v = np.ones(m) / math.sqrt(m)
    restarted = False
    prev = None
    it = 0
    while it < max_iter:
        it += 1
        u = matrix @ v
        rq = float(u @ u)
        if rq == 0.0 and prev is None:
            if restarted:
                return 0.0, it
            restarted = True
            v = np.random.default_rng(FALLBACK_SEED).standard_normal(m)
            v /= np.linalg.norm(v)
            continue
        if prev is not None and abs(rq - prev) < tol:
            return math.sqrt(rq), it
        prev = rq
        g = matrix.T @ u
        gn = float(np.linalg.norm(g))
        if gn == 0.0:
            return math.sqrt(rq), it
        v = g / gn
    return math.sqrt(prev if prev is not None else 0.0), it


def largest_singular_value(block: GradedBlock | np.ndarray, tol: float = DEFAULT_TOL,
                           max_iter: int = DEFAULT_MAX_ITER, method: str = "auto",
                           dense_threshold: int = DENSE_THRESHOLD) -> tuple[float, int]:
    """Operator norm of a block; returns ``(value, iterations)``.

    ``method="auto"`` uses a dense SVD when both dimensions are at most
    ``dense_threshold`` (iterations reported as 0) and power iteration
    otherwise.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if isinstance(block, GradedBlock):
        shape = block.shape
        if 0 in shape:
            return 0.0, 0
        values = [v for col in block.columns for v in col.values()]
        dense_ok = max(shape) <= dense_threshold
        use_dense = method == "dense" or (method == "auto" and dense_ok)
        mat = block.to_dense() if use_dense else block.to_sparse()
    else:
        mat = np.asarray(block, dtype=float)
        if 0 in mat.shape:
            return 0.0, 0
        values = mat.ravel()
        use_dense = method in ("auto", "dense")
    if not all(math.isfinite(v) for v in values):
        raise ValueError("block has non-finite entries")
    if use_dense:
        return float(np.linalg.svd(mat, compute_uv=False)[0]), 0
    return power_iteration(mat, tol, max_iter)


@dataclass(frozen=True)
class ProfileRow:
    k: int
    dim_src: int
    dim_tgt: int
    norm: float
    iters: int


@dataclass
class NormProfile:
    symmetry: str
    exponents: tuple[int, ...]
    weights: str
    rows: list[ProfileRow] = field(default_factory=list)
    product_of_power_norms: float = 0.0
    limit_prediction: float = 0.0
    tol: float = DEFAULT_TOL

    @property
    def max_norm(self) -> float:
        return max((r.norm for r in self.rows), default=0.0)

    @property
    def argmax_k(self) -> int | None:
        best = self.max_norm
        for r in self.rows:
            if r.norm == best:
                return r.k
        return None

    @property
    def norms(self) -> list[float]:
        return [r.norm for r in self.rows]

    def running_max(self) -> list[float]:
        out, cur = [], 0.0
        for r in self.rows:
            cur = max(cur, r.norm)
            out.append(cur)
        return out

    def to_dict(self) -> dict:
        return {
            "symmetry": self.symmetry,
            "exponents": list(self.exponents),
            "weights": self.weights,
            "rows": [asdict(r) for r in self.rows],
            "max_norm": self.max_norm,
            "argmax_k": self.argmax_k,
            "product_of_power_norms": self.product_of_power_norms,
            "limit_prediction": self.limit_prediction,
            "tol": self.tol,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "NormProfile":
        return cls(symmetry=doc["symmetry"], exponents=tuple(doc["exponents"]),
                   weights=doc["weights"], rows=[ProfileRow(**r) for r in doc["rows"]],
                   product_of_power_norms=doc["product_of_power_norms"],
                   limit_prediction=doc["limit_prediction"], tol=doc["tol"])


def full_tensor_norm(w: WeightSequence, l) -> float:
    """``prod ||S^{l_i}||``, the norm of the plain tensor product."""
    out = 1.0
    for li in ExponentTuple.of(l):
        out *= power_norm(w, li)
    return out


def block_row(w: WeightSequence, l: ExponentTuple, k: int, symmetry: str,
              tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> ProfileRow:
    block = build_block(w, l, k, symmetry)
    value, iters = largest_singular_value(block, tol, max_iter)
    return ProfileRow(k, block.shape[1], block.shape[0], value, iters)


def norm_profile(w: WeightSequence, l, symmetry: str, k_max: int, tol: float = DEFAULT_TOL,
                 max_iter: int = DEFAULT_MAX_ITER, workers: int = 1) -> NormProfile:
    """Block norms for ``k = 0..k_max``; their max estimates the operator norm."""
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    l = ExponentTuple.of(l)
    symmetry = normalize_symmetry(symmetry)

    def row(k: int) -> ProfileRow:
        return block_row(w, l, k, symmetry, tol, max_iter)

    ks = range(k_max + 1)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(row, ks))
    else:
        rows = [row(k) for k in ks]
    rows.sort(key=lambda r: r.k)
    return NormProfile(symmetry=symmetry, exponents=l.entries, weights=w.describe(), rows=rows,
                       product_of_power_norms=full_tensor_norm(w, l),
                       limit_prediction=w.lam ** l.abs_sum, tol=tol)
