"""Brute-force reference computations on the truncated full tensor space.

None of these use the action formula or the census machinery: operators are
assembled as ``(1/n!) sum_pi A_pi(1) x ... x A_pi(n)`` from explicit shift
matrices and compressed onto explicitly symmetrised/antisymmetrised basis
vectors.  They are slow and only meant for small ``n`` and ``k``.
"""

from __future__ import annotations

import math
from itertools import permutations, product

import numpy as np

from .indexcomb import enumerate_classes, enumerate_strict, perm_sign
from .weights import ExponentTuple, WeightSequence


def shift_matrix(w: WeightSequence, t: int, size: int) -> np.ndarray:
    """``S_{a,t}`` on span(e_0..e_{size-1}), images past the edge dropped."""
    S = np.zeros((size, size))
    for i in range(size - 1):
        S[i + 1, i] = w(i)
    if t >= 0:
        return np.linalg.matrix_power(S, t)
    return np.linalg.matrix_power(S.T, -t)


def _apply_factors(mats, V: np.ndarray) -> np.ndarray:
    for axis, A in enumerate(mats):
        V = np.moveaxis(np.tensordot(A, V, axes=(1, axis)), 0, axis)
    return V


def _basis_tensor(entries, size: int, signed: bool) -> np.ndarray:
    n = len(entries)
    T = np.zeros((size,) * n)
    for sigma in permutations(range(n)):
        idx = tuple(entries[s] for s in sigma)
        T[idx] += perm_sign(sigma) if signed else 1.0
    T /= math.factorial(n)
    return T / np.linalg.norm(T)


def compressed_block(w: WeightSequence, l, k: int, symmetry: str) -> np.ndarray:
    """Matrix of the compressed operator from degree ``k`` to ``k + S_l``."""
    l = ExponentTuple.of(l)
    n = l.n
    signed = symmetry.startswith("anti") or symmetry == "wedge"
    enum = enumerate_strict if signed else enumerate_classes
    sources = enum(k, n)
    tdeg = k + l.signed_sum
    targets = enum(tdeg, n) if tdeg >= 0 else []
    size = max(k + l.h, tdeg, 0) + 2
    if not sources or not targets:
        return np.zeros((len(targets), len(sources)))
    mats = {t: shift_matrix(w, t, size) for t in set(l)}
    Bs = np.stack([_basis_tensor(s, size, signed) for s in sources], axis=-1)
    Bt = np.stack([_basis_tensor(t, size, signed) for t in targets], axis=-1)
    TBs = np.zeros_like(Bs)
    for pi in permutations(range(n)):
        TBs += _apply_factors([mats[l[p]] for p in pi], Bs)
    TBs /= math.factorial(n)
    flat = size ** n
    return Bt.reshape(flat, -1).T @ TBs.reshape(flat, -1)


def block_norm(w: WeightSequence, l, k: int, symmetry: str) -> float:
    M = compressed_block(w, l, k, symmetry)
    if M.size == 0:
        return 0.0
    return float(np.linalg.norm(M, 2))


def profile_max(w: WeightSequence, l, symmetry: str, k_max: int) -> float:
    return max(block_norm(w, l, k, symmetry) for k in range(k_max + 1))


def power_norm_scan(w: WeightSequence, l: int, upto: int) -> float:
    """``max_{i <= upto} |beta(i, l)|`` by direct multiplication."""
    t = abs(l)
    best = 0.0
    for i in range(upto + 1):
        p = 1.0
        for j in range(i, i + t):
            p *= w(j)
        best = max(best, p)
    return best


def sym_tensor_norm(xs) -> float:
    """``||x_1 (.) ... (.) x_n||`` via the symmetrised full tensor."""
    size = max(len(x) for x in xs)
    vecs = [np.pad(np.asarray(x, dtype=float), (0, size - len(x))) for x in xs]
    n = len(vecs)
    T = vecs[0]
    for v in vecs[1:]:
        T = np.multiply.outer(T, v)
    S = sum(np.transpose(T, sigma) for sigma in permutations(range(n))) / math.factorial(n)
    return float(np.linalg.norm(S))


def permanent(A: np.ndarray) -> float:
    n = A.shape[0]
    return float(sum(np.prod([A[r, s[r]] for r in range(n)]) for s in permutations(range(n))))


def sym_tensor_norm_gram(xs) -> float:
    """``sqrt(per(G) / n!)`` with ``G`` the Gram matrix of the factors."""
    size = max(len(x) for x in xs)
    X = np.stack([np.pad(np.asarray(x, dtype=float), (0, size - len(x))) for x in xs])
    return math.sqrt(permanent(X @ X.T) / math.factorial(len(xs)))


def weakly_increasing_count(k: int, n: int) -> int:
    """Partitions of ``k`` into at most ``n`` parts by listing all ordered tuples."""
    if k < 0:
        return 0
    return sum(1 for t in product(range(k + 1), repeat=n)
               if sum(t) == k and all(a <= b for a, b in zip(t, t[1:])))
