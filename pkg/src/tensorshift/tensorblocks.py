"""Degree blocks of symmetric and antisymmetric tensor products of shift powers.

The operator ``S_{a,l_1} (.) ... (.) S_{a,l_n}`` maps the span of degree-``k``
basis vectors into degree ``k + S_l``, so it is the orthogonal direct sum of
its blocks.  A block is tabulated from the action formula

    T e_i = (1/n!) sum_pi beta(i_1, l_pi(1)) ... beta(i_n, l_pi(n)) e_{i + l_pi}

and stored in orthonormal coordinates (basis vectors divided by their norms),
so its largest singular value is the norm of the operator on that degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

import numpy as np

from .indexcomb import (MultiIndexClass, check_n, enumerate_classes, enumerate_strict,
                        has_repeats, perm_sign)
from .weights import ExponentTuple, WeightSequence, beta

SYMMETRIC = "symmetric"
ANTISYMMETRIC = "antisymmetric"
DENSE_THRESHOLD = 512


def normalize_symmetry(symmetry: str) -> str:
    s = symmetry.lower()
    if s in ("sym", "symmetric", "odot"):
        return SYMMETRIC
    if s in ("anti", "antisym", "antisymmetric", "wedge"):
        return ANTISYMMETRIC
    raise ValueError(f"unknown symmetry {symmetry!r}")


def sym_basis_norm(cls: Sequence[int]) -> float:
    """``||e_<i>|| = sqrt(k_1! ... k_s! / n!)`` for multiplicities ``k_j``."""
    c = MultiIndexClass(cls)
    num = 1
    for m in c.multiplicities:
        num *= math.factorial(m)
    return math.sqrt(num / math.factorial(len(c)))


def wedge_basis_norm(n: int) -> float:
    if n < 1:
        raise ValueError("n must be at least 1")
    return 1.0 / math.sqrt(math.factorial(n))


@dataclass(frozen=True)
class GradedBlock:
    """One degree block, column-sparse: ``columns[s]`` maps target ordinal to value."""

    symmetry: str
    l: ExponentTuple
    source_degree: int
    source_basis: tuple[tuple[int, ...], ...]
    target_basis: tuple[tuple[int, ...], ...]
    columns: tuple[Mapping[int, float], ...] = field(repr=False)

    @property
    def target_degree(self) -> int:
        return self.source_degree + self.l.signed_sum

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.target_basis), len(self.source_basis))

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    def entries(self):
        """Yield ``(source_ordinal, target_ordinal, value)`` triplets."""
        for s, col in enumerate(self.columns):
            for t in sorted(col):
                yield s, t, col[t]

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.shape)
        for s, t, v in self.entries():
            out[t, s] = v
        return out

    def to_sparse(self):
        from scipy.sparse import csc_matrix

        rows, cols, vals = [], [], []
        for s, t, v in self.entries():
            rows.append(t)
            cols.append(s)
            vals.append(v)
        return csc_matrix((vals, (rows, cols)), shape=self.shape)

    def check_grading(self) -> bool:
        tgt = self.target_degree
        return (all(sum(b) == self.source_degree for b in self.source_basis)
                and all(sum(b) == tgt for b in self.target_basis)
                and all(0 <= t < len(self.target_basis) for col in self.columns for t in col))

    def to_dict(self) -> dict:
        return {
            "symmetry": self.symmetry,
            "exponents": list(self.l.entries),
            "source_degree": self.source_degree,
            "target_degree": self.target_degree,
            "source_basis": [list(b) for b in self.source_basis],
            "target_basis": [list(b) for b in self.target_basis],
            "entries": [[s, t, v] for s, t, v in self.entries()],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "GradedBlock":
        cols: list[dict[int, float]] = [dict() for _ in doc["source_basis"]]
        for s, t, v in doc["entries"]:
            cols[s][t] = float(v)
        return cls(symmetry=doc["symmetry"], l=ExponentTuple(tuple(doc["exponents"])),
                   source_degree=doc["source_degree"],
                   source_basis=tuple(tuple(b) for b in doc["source_basis"]),
                   target_basis=tuple(tuple(b) for b in doc["target_basis"]),
                   columns=tuple(cols))


class _BetaCache(dict):
    def __init__(self, w: WeightSequence):
        super().__init__()
        self.w = w

    def __missing__(self, key):
        value = self[key] = beta(self.w, *key)
        return value


def build_sym_block(w: WeightSequence, l: ExponentTuple | Sequence[int], k: int) -> GradedBlock:
    """Block of ``S_{a,l_1} (.) ... (.) S_{a,l_n}`` from degree ``k`` to ``k + S_l``."""
    l = ExponentTuple.of(l)
    n = l.n
    check_n(n)
    if k < 0:
        raise ValueError("source degree must be nonnegative")
    sources = enumerate_classes(k, n)
    targets = enumerate_classes(k + l.signed_sum, n)
    index = {t: r for r, t in enumerate(targets)}
    tnorm = [sym_basis_norm(t) for t in targets]
    betas = _BetaCache(w)
    # each distinct arrangement stands for stabilizer_order permutations
    weight = l.stabilizer_order / math.factorial(n)
    columns = []
    for src in sources:
        acc: dict[int, float] = {}
        for arr in l.distinct_arrangements:
            shifted = [a + b for a, b in zip(src, arr)]
            if min(shifted) < 0:
                continue
            prod_ = 1.0
            for a, b in zip(src, arr):
                prod_ *= betas[a, b]
                if prod_ == 0.0:
                    break
            if prod_ == 0.0:
                continue
            r = index[MultiIndexClass(shifted)]
            acc[r] = acc.get(r, 0.0) + weight * prod_
        snorm = sym_basis_norm(src)
        columns.append({r: v * tnorm[r] / snorm for r, v in acc.items() if v != 0.0})
    return GradedBlock(SYMMETRIC, l, k, tuple(tuple(s) for s in sources),
                       tuple(tuple(t) for t in targets), tuple(columns))


def build_wedge_block(w: WeightSequence, l: ExponentTuple | Sequence[int], k: int) -> GradedBlock:
    """Block of ``S_{a,l_1} ^ ... ^ S_{a,l_n}`` on strictly increasing index tuples.

    A shifted tuple with a repeated entry contributes nothing; otherwise it
    is sorted and the coefficient picks up the sign of the sort.  Both bases
    have the same norm ``1/sqrt(n!)``, so no rescaling is needed.
    """
    l = ExponentTuple.of(l)
    n = l.n
    check_n(n)
    if k < 0:
        raise ValueError("source degree must be nonnegative")
    sources = enumerate_strict(k, n)
    targets = enumerate_strict(k + l.signed_sum, n)
    index = {tuple(t): r for r, t in enumerate(targets)}
    betas = _BetaCache(w)
    weight = l.stabilizer_order / math.factorial(n)
    columns = []
    for src in sources:
        acc: dict[int, float] = {}
        for arr in l.distinct_arrangements:
            shifted = [a + b for a, b in zip(src, arr)]
            if min(shifted) < 0 or has_repeats(shifted):
                continue
            prod_ = 1.0
            for a, b in zip(src, arr):
                prod_ *= betas[a, b]
            if prod_ == 0.0:
                continue
            r = index[tuple(sorted(shifted))]
            acc[r] = acc.get(r, 0.0) + perm_sign(shifted) * weight * prod_
        columns.append({r: v for r, v in acc.items() if v != 0.0})
    return GradedBlock(ANTISYMMETRIC, l, k, tuple(tuple(s) for s in sources),
                       tuple(tuple(t) for t in targets), tuple(columns))


def build_block(w: WeightSequence, l, k: int, symmetry: str) -> GradedBlock:
    if normalize_symmetry(symmetry) == SYMMETRIC:
        return build_sym_block(w, l, k)
    return build_wedge_block(w, l, k)


# -- symmetric tensors of vectors -------------------------------------------

def _as_coefficients(x) -> dict[int, float]:
    if isinstance(x, Mapping):
        return {int(i): float(v) for i, v in x.items() if v != 0}
    return {i: float(v) for i, v in enumerate(x) if v != 0}


@dataclass(frozen=True)
class SymmetricVectorTensor:
    """``x_1 (.) ... (.) x_n`` as coefficients on the (unnormalised) ``e_<j>``."""

    n: int
    coefficients: Mapping[MultiIndexClass, float]

    @property
    def norm(self) -> float:
        return math.sqrt(sum(c * c * sym_basis_norm(j) ** 2 for j, c in self.coefficients.items()))


def sym_tensor_vectors(xs: Sequence) -> SymmetricVectorTensor:
    """Expand ``x_1 (.) ... (.) x_n`` for finitely supported vectors.

    Each vector is a mapping ``index -> coefficient`` or a dense sequence.
    The coefficient of ``e_<j>`` collects ``prod_r a_{r, j_r}`` over the
    ordered tuples in the class ``<j>``.
    """
    coeffs = [_as_coefficients(x) for x in xs]
    n = len(coeffs)
    check_n(n)
    out: dict[MultiIndexClass, float] = {}
    for idx in product(*(sorted(c) for c in coeffs)):
        value = 1.0
        for r, i in enumerate(idx):
            value *= coeffs[r][i]
        key = MultiIndexClass(idx)
        out[key] = out.get(key, 0.0) + value
    return SymmetricVectorTensor(n, out)


def ordered_expansion_norm(xs: Sequence) -> float:
    """``sqrt(sum over ordered tuples of |prod a|^2 ||e_i||^2)``.

    Equals ``sym_tensor_vectors(xs).norm`` only when no class collects more
    than one ordered tuple, e.g. when the supports are pairwise disjoint.
    """
    coeffs = [_as_coefficients(x) for x in xs]
    total = 0.0
    for idx in product(*(sorted(c) for c in coeffs)):
        value = 1.0
        for r, i in enumerate(idx):
            value *= coeffs[r][i]
        total += value * value * sym_basis_norm(idx) ** 2
    return math.sqrt(total)


def vector_norm(x) -> float:
    return math.sqrt(sum(v * v for v in _as_coefficients(x).values()))


def apply_shift_power(w: WeightSequence, t: int, x) -> dict[int, float]:
    """``S_{a,t} x`` for a finitely supported ``x``; ``e_i -> beta(i, t) e_{i+t}``."""
    out: dict[int, float] = {}
    for i, v in _as_coefficients(x).items():
        b = beta(w, i, t)
        if b != 0.0 and i + t >= 0:
            out[i + t] = out.get(i + t, 0.0) + b * v
    return out
