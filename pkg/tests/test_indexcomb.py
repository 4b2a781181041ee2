import math
from itertools import permutations, product

import pytest
from hypothesis import given, strategies as st

from tensorshift import oracles
from tensorshift.indexcomb import (BudgetExceeded, MultiIndexClass, StrictIndexTuple, census,
                                   census_antisym, e_buckets, enumerate_classes, enumerate_spread,
                                   enumerate_strict, growth_check, in_w_frak, repeated_entry_exhaustive,
                                   n_set, partitions_P, partitions_Q, perm_sign,
                                   permutation_partition_check, r_count, r_set, strict_count,
                                   w_frak_members, wedge_n_set, wedge_r_set)
from tensorshift.weights import ExponentTuple, WeightSequence

small_l = st.lists(st.integers(-2, 2), min_size=1, max_size=3).map(ExponentTuple.of)


# -- partitions ----------------------------------------------------------------

def test_partition_values():
    assert partitions_P(4, 2) == 3
    assert partitions_Q(4, 2) == 5
    assert partitions_P(20, 4) == 108
    assert partitions_P(0, 3) == 1
    assert partitions_P(-1, 3) == 0
    # one part: the only partition of k is k itself
    assert [partitions_P(k, 1) for k in range(5)] == [1, 1, 1, 1, 1]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_P_matches_enumeration(n):
    for k in range(13):
        assert partitions_P(k, n) == oracles.weakly_increasing_count(k, n)


@given(st.integers(0, 60), st.integers(1, 6))
def test_Q_binomial(k, n):
    assert partitions_Q(k, n) == sum(1 for _ in _ordered(k, n)) if k <= 12 else True
    assert partitions_Q(k, n) == math.comb(k + n - 1, n - 1)


def _ordered(k, n):
    return (t for t in product(range(k + 1), repeat=n) if sum(t) == k)


def test_Q_huge_is_exact():
    assert partitions_Q(10_000, 6) == math.comb(10_005, 5)


# -- enumeration -------------------------------------------------------------

def test_enumerate_classes_examples():
    assert enumerate_classes(2, 2) == [(0, 2), (1, 1)]
    assert enumerate_classes(0, 3) == [(0, 0, 0)]
    assert len(enumerate_classes(20, 4)) == 108


@given(st.integers(0, 25), st.integers(1, 4))
def test_enumerate_classes_count_and_order(k, n):
    cls = enumerate_classes(k, n)
    assert len(cls) == partitions_P(k, n)
    assert cls == sorted(cls)
    assert all(sum(c) == k and list(c) == sorted(c) for c in cls)


def test_multiindex_class():
    c = MultiIndexClass((3, 1, 1))
    assert c == (1, 1, 3) and c.degree == 5 and c.multiplicities == (2, 1)


def test_strict_tuple_validation():
    assert StrictIndexTuple((1, 4), d=1).degree == 5
    with pytest.raises(ValueError):
        StrictIndexTuple((2, 2))
    with pytest.raises(ValueError):
        StrictIndexTuple((0, 3), d=1)


def test_strict_count_example():
    # pairs 1 <= i1 < i2 with i1 + i2 = 7: (1,6), (2,5), (3,4)
    assert [tuple(t) for t in enumerate_strict(7, 2, 1)] == [(1, 6), (2, 5), (3, 4)]
    assert strict_count(7, 2, 1) == 3


@given(st.integers(0, 30), st.integers(1, 3), st.integers(0, 3))
def test_strict_count_matches_enumeration(k, n, d):
    brute = sum(1 for t in product(range(d, k + 1), repeat=n)
                if sum(t) == k and all(a < b for a, b in zip(t, t[1:])))
    assert strict_count(k, n, d) == brute == len(enumerate_strict(k, n, d))


@given(st.integers(0, 40), st.integers(1, 3), st.integers(1, 2), st.integers(0, 5))
def test_spread_subset_of_strict(k, n, d, gap):
    spread = enumerate_spread(k, n, d, gap)
    strict = set(map(tuple, enumerate_strict(k, n, d)))
    assert {tuple(s) for s in spread} == {s for s in strict
                                          if all(b - a > gap for a, b in zip(s, s[1:]))}


def test_budget(monkeypatch):
    monkeypatch.setenv("TENSORSHIFT_BUDGET", "10")
    with pytest.raises(BudgetExceeded):
        enumerate_classes(30, 3)
    monkeypatch.setenv("TENSORSHIFT_BUDGET", "zero")
    with pytest.raises(ValueError):
        enumerate_classes(3, 2)


def test_n_cap():
    with pytest.raises(ValueError):
        enumerate_classes(3, 7)


def test_perm_sign():
    assert perm_sign((0, 1, 2)) == 1
    assert perm_sign((1, 0, 2)) == -1
    assert perm_sign((2, 0, 1)) == 1


# -- symmetric census sets ---------------------------------------------------

def test_r_set_examples():
    l = ExponentTuple((1, -1))
    assert r_set((1, 1), l) == {(0, 2)}
    assert r_set((0, 2), l) == {(1, 1)}
    assert r_set((3, 5), ExponentTuple((0, 0))) == {(3, 5)}


def test_n_set_examples():
    l = ExponentTuple((1, -1))
    assert n_set((1, 1), (0, 2), l) == {(0, 1)}
    assert n_set((5, 9), (0, 2), l) == set()
    assert n_set((2, 4), (2, 4), ExponentTuple((0, 0))) == set(permutations(range(2)))


def _r_set_brute(i, l):
    # every class of the right degree whose shifted class equals <i>
    n, deg = l.n, sum(i) - l.signed_sum
    return {c for c in enumerate_classes(deg, n)
            for pi in permutations(range(n))
            if sorted(a + l[p] for a, p in zip(c, pi)) == sorted(i)} if deg >= 0 else set()


@given(small_l, st.data())
def test_r_set_matches_brute_force(l, data):
    deg = data.draw(st.integers(0, 8))
    for c in enumerate_classes(deg, l.n):
        assert r_set(c, l) == _r_set_brute(c, l)
        assert r_count(c, l) <= l.M


def test_census_example(hardy):
    rep = census(2, (1, -1), (2, 2), 0.1, hardy)
    rec = rep.records[0]
    assert rec.E == [0, 2, 0]
    # the classes of degree 10 in N^2 are <0,10>..<5,5>: six of them
    # (11 would be the count of ordered pairs, Q(10, 2))
    rep = census(2, (1, -1), (10, 10), 0.1, hardy)
    assert sum(rep.records[0].E) == partitions_P(10, 2) == 6
    assert partitions_Q(10, 2) == 11


def test_census_all_equal_exponents_deficient_classes():
    # with l = (1,1) a class containing 0 has no preimage, so #R = 0 < M = 1:
    # A_k is the single class <0, k>, never empty
    rep = census(2, (1, 1), (1, 30), 0.1, None)
    assert all(r.A == 1 for r in rep.records)
    for r in rep.records:
        assert [c for c in enumerate_classes(r.k, 2) if r_count(c, (1, 1)) < 1] == [(0, r.k)]


@pytest.mark.parametrize("l", [(1, -1), (1, 1, -1), (2, 1, -3)])
def test_partition_identity(l):
    l = ExponentTuple(l)
    rep = census(l.n, l, (0, 30), 0.1, WeightSequence.constant(1.0))
    assert rep.check_invariants()
    for r in rep.records:
        assert sum(r.E) == partitions_P(r.k + l.signed_sum, l.n)


@pytest.mark.parametrize("i, l", [((0, 2), (1, -1)), ((1, 2, 3), (1, 1, -1)), ((0, 0, 4), (2, 1, -3)),
                                  ((3, 3), (0, 0))])
def test_permutation_partition_examples(i, l):
    assert permutation_partition_check(i, l)


@given(small_l, st.data())
def test_permutation_partition_property(l, data):
    i = tuple(data.draw(st.lists(st.integers(0, 6), min_size=l.n, max_size=l.n)))
    assert permutation_partition_check(i, l)


def test_repeated_entry_exhaustive():
    for l in [(1, -1), (1, 1, -1), (2, 1, -3), (1, 0, 0, -1), (2, -1, -1, 0)]:
        ok, checked = repeated_entry_exhaustive(ExponentTuple(l), max_entry=12)
        assert ok and checked > 0


def test_e_buckets_cover_degree():
    l = ExponentTuple((2, -1))
    buckets = e_buckets(9, l)
    assert sorted(c for b in buckets for c in b) == enumerate_classes(9, 2)


# -- antisymmetric census sets -----------------------------------------------

def _w_frak_brute(k, l, d):
    L, n = l.abs_sum, l.n
    out = set()
    for base in range(0, k + n * L + 1):
        for i in enumerate_strict(base, n, d):
            for t in product(range(-L, L + 1), repeat=n):
                j = tuple(a + b for a, b in zip(i, t))
                if sum(j) == k and min(j) >= 0 and len(set(j)) == n:
                    out.add(j)
    return out


@pytest.mark.parametrize("l, d", [((1, -1), 1), ((1, 1), 1), ((1, 1, -1), 1), ((2, -1), 2)])
def test_w_frak_membership_matches_box_search(l, d):
    l = ExponentTuple(l)
    for k in range(0, 10):
        assert set(w_frak_members(k, l, d)) == _w_frak_brute(k, l, d)


def test_inclusions_W_prime_W_frak():
    l = ExponentTuple((1, -1))
    for k in range(0, 40):
        W = {tuple(t) for t in enumerate_strict(k, 2, 1)}
        Wp = {tuple(t) for t in enumerate_spread(k, 2, 1, 8)}
        frak = set(w_frak_members(k, l, 1))
        assert Wp <= W <= frak


def test_wedge_n_set_spread():
    # i strictly spread: #N in {1, 2} for every target it reaches
    l = ExponentTuple((1, -1))
    for k in range(20, 40):
        for i in enumerate_spread(k, 2, 1, 8):
            for pi in permutations(range(2)):
                j = tuple(a + l[p] for a, p in zip(i, pi))
                assert len(wedge_n_set(j, i, l)) in (1, 2)


def test_wedge_r_set_is_sign_sensitive():
    l = ExponentTuple((1, -1))
    # (3, 5) is reached from (2, 6) and (4, 4)-> repeated (excluded)
    assert wedge_r_set((3, 5), l, 1) == {(2, 6)}
    # (3, 6) + (1, -1) = (4, 5); (4, 5) itself is sent to e_5 ^ e_4 = -e_4 ^ e_5,
    # which is not the same vector, so it is not collected
    assert wedge_r_set((4, 5), l, 1) == {(3, 6)}
    with pytest.raises(ValueError):
        wedge_r_set((2, 2), l, 1)


def test_census_antisym_counts(hardy):
    rep = census_antisym(2, (1, -1), 1, (20, 30), 0.1, hardy)
    assert rep.check_invariants()
    for r in rep.records:
        assert r.W == strict_count(r.k, 2, 1)
        assert r.W_prime <= r.W <= r.W_frak
        assert r.A_tilde_prime + r.A_check_prime <= r.W_prime


def test_census_antisym_rejects_d0():
    with pytest.raises(ValueError):
        census_antisym(2, (1, -1), 0, (0, 3))


# -- growth diagnostics ------------------------------------------------------

def test_growth_check():
    assert growth_check({k: 3 * k for k in range(1, 50)}, 1).ok
    assert not growth_check({k: k ** 4 for k in range(1, 50)}, 1).ok
    assert not growth_check({k: 2 ** k for k in range(1, 50)}, 1).ok
    assert growth_check({k: 0 for k in range(1, 10)}, 0).ok
    # starts late, then bounded
    assert growth_check({k: (0 if k < 20 else 2) for k in range(1, 50)}, 0).ok
