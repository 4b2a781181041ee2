"""Multi-index classes, partition counts and the census sets.

Symmetric basis vectors ``e_<i>`` are indexed by multisets of ``n``
nonnegative integers; a multiset is stored as its weakly increasing
representative (:class:`MultiIndexClass`).  Antisymmetric basis vectors are
indexed by strictly increasing tuples (:class:`StrictIndexTuple`).

Everything here is exact integer enumeration; permutation groups are
enumerated outright, so ``n`` is capped at :data:`N_CAP`.
"""

from __future__ import annotations

import math
import os
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Iterator, Sequence

from .weights import ExponentTuple, WeightSequence, gamma

N_CAP = 6
DEFAULT_BUDGET = 5_000_000
BUDGET_ENV = "TENSORSHIFT_BUDGET"


class BudgetExceeded(RuntimeError):
    """An enumeration would visit more objects than the configured budget."""


def enumeration_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV} must be a positive integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError(f"{BUDGET_ENV} must be a positive integer, got {raw!r}")
    return value


def check_budget(count: int, what: str) -> None:
    budget = enumeration_budget()
    if count > budget:
        raise BudgetExceeded(f"{what}: {count} items exceed the enumeration budget {budget}")


def check_n(n: int) -> None:
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > N_CAP:
        raise ValueError(f"n={n} exceeds the cap {N_CAP} (permutations are enumerated)")


class MultiIndexClass(tuple):
    """A permutation class ``<i>`` of ``N^n``, stored sorted."""

    __slots__ = ()

    def __new__(cls, entries: Iterable[int]):
        return super().__new__(cls, sorted(entries))

    @property
    def degree(self) -> int:
        return sum(self)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        out = []
        prev = None
        for x in self:
            if x == prev:
                out[-1] += 1
            else:
                out.append(1)
                prev = x
        return tuple(out)


class StrictIndexTuple(tuple):
    """A strictly increasing tuple with all entries at least ``d``."""

    def __new__(cls, entries: Iterable[int], d: int = 0):
        ents = tuple(entries)
        if any(b <= a for a, b in zip(ents, ents[1:])):
            raise ValueError(f"{ents} is not strictly increasing")
        if ents and ents[0] < d:
            raise ValueError(f"{ents} has an entry below the offset {d}")
        obj = super().__new__(cls, ents)
        obj.d = d
        return obj

    @property
    def degree(self) -> int:
        return sum(self)


def perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (entries assumed distinct)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def has_repeats(seq: Sequence[int]) -> bool:
    return len(set(seq)) != len(seq)


# -- partition counts -------------------------------------------------------

@lru_cache(maxsize=None)
def _partition_row(n: int, k: int) -> tuple[int, ...]:
    # row[j] = P(j, n) for j <= k via P(j, m) = P(j, m-1) + P(j-m, m)
    row = [1] + [0] * k
    for m in range(1, n + 1):
        for j in range(m, k + 1):
            row[j] += row[j - m]
    return tuple(row)


def partitions_P(k: int, n: int) -> int:
    """Number of partitions of ``k`` into at most ``n`` parts."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if k < 0:
        return 0
    # grow the cached row in chunks so repeated calls stay cheap
    size = max(64, 1 << (k.bit_length()))
    return _partition_row(n, size)[k]


def partitions_Q(k: int, n: int) -> int:
    """Number of ordered ``n``-tuples of nonnegative integers summing to ``k``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if k < 0:
        raise ValueError("k must be nonnegative")
    return math.comb(k + n - 1, n - 1)


# -- enumeration ------------------------------------------------------------

def _weak_tuples(k: int, n: int, lo: int) -> Iterator[tuple[int, ...]]:
    if n == 1:
        if k >= lo:
            yield (k,)
        return
    for first in range(lo, k // n + 1):
        for rest in _weak_tuples(k - first, n - 1, first):
            yield (first,) + rest


def enumerate_classes(k: int, n: int) -> list[MultiIndexClass]:
    """All weakly increasing ``n``-tuples summing to ``k``, lexicographically."""
    check_n(n)
    if k < 0:
        return []
    check_budget(partitions_P(k, n), f"classes of degree {k} in N^{n}")
    return [MultiIndexClass(t) for t in _weak_tuples(k, n, 0)]


def strict_count(k: int, n: int, d: int = 0) -> int:
    """``W_(k,n)``: strictly increasing tuples ``d <= i_1 < ... < i_n`` of degree ``k``."""
    return partitions_P(k - n * d - n * (n - 1) // 2, n)


def enumerate_strict(k: int, n: int, d: int = 0) -> list[StrictIndexTuple]:
    check_n(n)
    base = n * d + n * (n - 1) // 2
    if k < base:
        return []
    check_budget(strict_count(k, n, d), f"strict tuples of degree {k}")
    out = []
    for p in _weak_tuples(k - base, n, 0):
        out.append(StrictIndexTuple((d + r + p[r] for r in range(n)), d))
    return out


def enumerate_spread(k: int, n: int, d: int, gap: int) -> list[StrictIndexTuple]:
    """Strict tuples with all consecutive differences strictly above ``gap``."""
    step = gap + 1
    base = n * d + step * n * (n - 1) // 2
    if k < base:
        return []
    out = []
    for p in _weak_tuples(k - base, n, 0):
        out.append(StrictIndexTuple((d + step * r + p[r] for r in range(n)), d))
    return out


def _compositions(k: int, n: int) -> Iterator[tuple[int, ...]]:
    if n == 1:
        yield (k,)
        return
    for first in range(k + 1):
        for rest in _compositions(k - first, n - 1):
            yield (first,) + rest


# -- symmetric census sets --------------------------------------------------

def r_set(i: Sequence[int], l: ExponentTuple | Sequence[int]) -> set[MultiIndexClass]:
    """Classes ``<j>`` in ``N^n`` with ``<j + l_pi> = <i>`` for some ``pi``."""
    l = ExponentTuple.of(l)
    i = MultiIndexClass(i)
    out = set()
    for arr in l.distinct_arrangements:
        j = tuple(a - b for a, b in zip(i, arr))
        if min(j) >= 0:
            out.add(MultiIndexClass(j))
    return out


def r_count(i: Sequence[int], l: ExponentTuple) -> int:
    return len(r_set(i, l))


def n_set(j: Sequence[int], i: Sequence[int], l: ExponentTuple | Sequence[int]) -> set[tuple[int, ...]]:
    """Permutations ``pi`` (as 0-based image tuples) with ``<i + l_pi> = <j>``."""
    l = ExponentTuple.of(l)
    check_n(l.n)
    target = sorted(j)
    out = set()
    for pi in permutations(range(l.n)):
        if sorted(a + l[p] for a, p in zip(i, pi)) == target:
            out.add(pi)
    return out


def admissible_permutations(i: Sequence[int], l: ExponentTuple) -> set[tuple[int, ...]]:
    """Permutations keeping ``i + l_pi`` inside ``N^n``."""
    return {pi for pi in permutations(range(l.n)) if all(a + l[p] >= 0 for a, p in zip(i, pi))}


def e_buckets(r: int, l: ExponentTuple) -> list[list[MultiIndexClass]]:
    """``E_{r,m}`` for ``m = 0..M``: degree-``r`` classes bucketed by ``#R``."""
    buckets: list[list[MultiIndexClass]] = [[] for _ in range(l.M + 1)]
    for c in enumerate_classes(r, l.n):
        buckets[r_count(c, l)].append(c)
    return buckets


def gamma_good(w: WeightSequence, j: Sequence[int], l: ExponentTuple, eps: float) -> bool:
    """``Gamma_{j_m, -l_pi(m)} > 1 - eps`` for every position ``m`` and every ``pi``.

    As ``pi`` runs over all permutations, ``l_pi(m)`` runs over every value
    of ``l``, so it suffices to check the distinct values.
    """
    values = set(l)
    return all(gamma(w, jm, -v) > 1 - eps for jm in j for v in values)


def permutation_partition_check(i: Sequence[int], l: ExponentTuple | Sequence[int], k: int | None = None) -> bool:
    """Check that admissible permutations split exactly into the ``N_{j,i}`` by bucket."""
    l = ExponentTuple.of(l)
    i = tuple(i)
    if k is None:
        k = sum(i)
    if sum(i) != k:
        raise ValueError(f"|i| = {sum(i)} differs from k = {k}")
    admissible = admissible_permutations(i, l)
    buckets = e_buckets(k + l.signed_sum, l)
    if any(n_set(j, i, l) for j in buckets[0]):
        return False
    seen: set[tuple[int, ...]] = set()
    for t in range(1, l.M + 1):
        for j in buckets[t]:
            nj = n_set(j, i, l)
            if seen & nj:
                return False
            seen |= nj
    return seen == admissible


@dataclass
class CensusRecord:
    k: int
    P: int
    A: int
    E: list[int]
    A_tilde: int
    A_check: int
    # antisymmetric fields
    W: int | None = None
    W_prime: int | None = None
    W_frak: int | None = None
    A_cal: int | None = None
    A_tilde_prime: int | None = None
    A_check_prime: int | None = None

    def ratios(self, n: int) -> dict[str, float]:
        out = {}
        denom = self.W if self.W is not None else self.P
        out["A_tilde_ratio"] = self.A_tilde / self.P if self.P else 0.0
        if self.k > 0:
            out["A_growth"] = self.A / self.k ** (n - 2)
        if self.W is not None:
            out["A_tilde_prime_ratio"] = self.A_tilde_prime / denom if denom else 0.0
            if self.k > 0:
                out["W_frak_minus_W_prime_growth"] = (self.W_frak - self.W_prime) / self.k ** (n - 2)
                out["A_cal_growth"] = self.A_cal / self.k ** (n - 2)
        return out


@dataclass
class CensusReport:
    n: int
    l: tuple[int, ...]
    k_range: tuple[int, int]
    eps: float
    weights: str | None
    antisymmetric: bool = False
    d: int | None = None
    records: list[CensusRecord] = field(default_factory=list)

    @property
    def M(self) -> int:
        return ExponentTuple(self.l).M

    def record(self, k: int) -> CensusRecord:
        for r in self.records:
            if r.k == k:
                return r
        raise KeyError(k)

    def to_dict(self) -> dict:
        doc = asdict(self)
        doc["l"] = list(self.l)
        doc["k_range"] = list(self.k_range)
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "CensusReport":
        fields_ = dict(doc)
        fields_["l"] = tuple(doc["l"])
        fields_["k_range"] = tuple(doc["k_range"])
        fields_["records"] = [CensusRecord(**r) for r in doc["records"]]
        return cls(**fields_)

    def check_invariants(self) -> bool:
        l = ExponentTuple(self.l)
        for r in self.records:
            if not self.antisymmetric and sum(r.E) != partitions_P(r.k + l.signed_sum, self.n):
                return False
            if r.A_tilde + r.A_check != r.E[-1]:
                return False
        return True


def _census_k(k: int, l: ExponentTuple, eps: float, w: WeightSequence | None) -> CensusRecord:
    n = l.n
    P = partitions_P(k, n)
    A = sum(1 for c in enumerate_classes(k, n) if r_count(c, l) < l.M) if k >= 0 else 0
    buckets = e_buckets(k + l.signed_sum, l)
    full = buckets[l.M]
    if w is None:
        good = 0
    else:
        good = sum(1 for j in full if gamma_good(w, j, l, eps))
    return CensusRecord(k=k, P=P, A=A, E=[len(b) for b in buckets],
                        A_tilde=good, A_check=len(full) - good)


def census(n: int, l: ExponentTuple | Sequence[int], k_range: tuple[int, int],
           eps: float = 0.1, w: WeightSequence | None = None) -> CensusReport:
    """Per-degree counts of the symmetric census sets for ``k`` in ``k_range`` (inclusive)."""
    l = ExponentTuple.of(l)
    if l.n != n:
        raise ValueError(f"exponent tuple has length {l.n}, expected n={n}")
    check_n(n)
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    lo, hi = k_range
    rep = CensusReport(n=n, l=l.entries, k_range=(lo, hi), eps=eps,
                       weights=w.describe() if w is not None else None)
    rep.records = [_census_k(k, l, eps, w) for k in range(lo, hi + 1)]
    return rep


# -- antisymmetric census sets ----------------------------------------------

def in_w_frak(j: Sequence[int], l: ExponentTuple, d: int) -> bool:
    """Membership in the perturbed family: ``j = i + t`` with ``i`` in ``W``,
    ``|t_r| <= |l|``, entries of ``j`` distinct and nonnegative.

    A strictly increasing ``i`` with ``|i_r - j_r| <= |l|`` exists iff the
    greedy choice ``i_r = max(i_{r-1} + 1, j_r - |l|)`` (``i_0 = d - 1``)
    stays within ``j_r + |l|``.
    """
    if min(j) < 0 or has_repeats(j):
        return False
    L = l.abs_sum
    prev = d - 1
    for jr in j:
        ir = max(prev + 1, jr - L)
        if ir > jr + L:
            return False
        prev = ir
    return True


def w_frak_members(k: int, l: ExponentTuple, d: int) -> list[tuple[int, ...]]:
    n = l.n
    check_n(n)
    if k < 0:
        return []
    check_budget(partitions_Q(k, n), f"ordered tuples of degree {k}")
    return [j for j in _compositions(k, n) if in_w_frak(j, l, d)]


def wedge_r_set(i: Sequence[int], l: ExponentTuple, d: int) -> set[tuple[int, ...]]:
    """Strict ``j >= d`` with ``e_{j + l_pi}`` (wedge) equal to ``e_i`` (wedge) for some ``pi``.

    Equality is as vectors, so ``j + l_pi`` must be an even rearrangement of ``i``.
    """
    if has_repeats(i):
        raise ValueError("wedge census sets need an index tuple with distinct entries")
    n = len(i)
    out = set()
    for sigma in permutations(range(n)):
        rearranged = tuple(i[s] for s in sigma)
        # sign of e_{i_sigma} relative to e_i
        if perm_sign(sigma) != 1:
            continue
        for arr in l.distinct_arrangements:
            j = tuple(a - b for a, b in zip(rearranged, arr))
            if j[0] >= d and all(x < y for x, y in zip(j, j[1:])):
                out.add(j)
    return out


def wedge_n_set(j: Sequence[int], i: Sequence[int], l: ExponentTuple) -> set[tuple[int, ...]]:
    """Permutations with ``e_{i + l_pi} = e_j`` as wedge vectors."""
    l = ExponentTuple.of(l)
    if has_repeats(j) or min(j) < 0:
        raise ValueError("target must have distinct nonnegative entries")
    target_sign = perm_sign(j)
    target = sorted(j)
    out = set()
    for pi in permutations(range(l.n)):
        t = [a + l[p] for a, p in zip(i, pi)]
        if min(t) < 0 or has_repeats(t):
            continue
        if sorted(t) == target and perm_sign(t) == target_sign:
            out.add(pi)
    return out


def _census_antisym_k(k: int, l: ExponentTuple, d: int, eps: float,
                      w: WeightSequence | None) -> CensusRecord:
    n = l.n
    gap = 4 * l.abs_sum
    r = k + l.signed_sum
    W = strict_count(k, n, d)
    W_prime = len(enumerate_spread(k, n, d, gap))
    frak_k = w_frak_members(k, l, d)
    A_cal = sum(1 for j in frak_k if len(wedge_r_set(j, l, d)) < l.M)
    E = [0] * (l.M + 1)
    for j in w_frak_members(r, l, d):
        E[len(wedge_r_set(j, l, d))] += 1
    full_prime = [j for j in enumerate_spread(r, n, d, gap) if len(wedge_r_set(j, l, d)) == l.M]
    good_prime = sum(1 for j in full_prime if w is not None and gamma_good(w, j, l, eps))
    # the Gamma split over the whole top bucket of the perturbed family
    top = [j for j in w_frak_members(r, l, d) if len(wedge_r_set(j, l, d)) == l.M]
    good = sum(1 for j in top if w is not None and gamma_good(w, j, l, eps))
    return CensusRecord(k=k, P=partitions_P(k, n), A=A_cal, E=E, A_tilde=good,
                        A_check=len(top) - good, W=W, W_prime=W_prime, W_frak=len(frak_k),
                        A_cal=A_cal, A_tilde_prime=good_prime,
                        A_check_prime=len(full_prime) - good_prime)


def census_antisym(n: int, l: ExponentTuple | Sequence[int], d: int, k_range: tuple[int, int],
                   eps: float = 0.1, w: WeightSequence | None = None) -> CensusReport:
    """Per-degree counts of the antisymmetric census sets (offset ``d >= 1``)."""
    l = ExponentTuple.of(l)
    if l.n != n:
        raise ValueError(f"exponent tuple has length {l.n}, expected n={n}")
    check_n(n)
    if d < 1:
        raise ValueError("offset d must be at least 1")
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    lo, hi = k_range
    rep = CensusReport(n=n, l=l.entries, k_range=(lo, hi), eps=eps,
                       weights=w.describe() if w is not None else None,
                       antisymmetric=True, d=d)
    rep.records = [_census_antisym_k(k, l, d, eps, w) for k in range(lo, hi + 1)]
    return rep


# -- growth diagnostics -----------------------------------------------------

@dataclass(frozen=True)
class GrowthCheck:
    exponent: int
    constant_full: float
    constant_half: float
    ok: bool


def growth_check(counts: dict[int, int], exponent: int, factor: float = 4.0) -> GrowthCheck:
    """Ratio-doubling test for ``count(k) <= C k^exponent``.

    The statements are asymptotic, so the range starts at the first degree
    ``k0`` with a nonzero count.  The empirical constant
    ``max count(k) / k^exponent`` over ``[k0, K]`` must be less than
    ``factor`` times the one over ``[k0, (k0 + K) / 2]``.
    """
    ks = sorted(k for k in counts if k > 0)
    if not ks:
        raise ValueError("no positive degrees to check")
    live = [k for k in ks if counts[k] > 0]
    if not live:
        return GrowthCheck(exponent, 0.0, 0.0, True)
    k0, K = live[0], ks[-1]
    window = [k for k in ks if k >= k0]
    full = max(counts[k] / k ** exponent for k in window)
    half = max(counts[k] / k ** exponent for k in window if k <= (k0 + K) // 2)
    return GrowthCheck(exponent, full, half, full < factor * half)


def repeated_entry_holds(j: Sequence[int], l: ExponentTuple) -> bool:
    """``#{<j - l_pi>} <= M - 1`` (classes taken in ``Z^n``)."""
    images = {tuple(sorted(a - b for a, b in zip(j, arr))) for arr in l.distinct_arrangements}
    return len(images) <= l.M - 1


def repeated_entry_exhaustive(l: ExponentTuple, max_entry: int = 12) -> tuple[bool, int]:
    """Check every sorted ``j`` with a repeated entry and entries ``<= max_entry``."""
    checked = 0
    for j in product(range(max_entry + 1), repeat=l.n):
        if any(b < a for a, b in zip(j, j[1:])) or not has_repeats(j):
            continue
        checked += 1
        if not repeated_entry_holds(j, l):
            return False, checked
    return True, checked
