import math

import pytest
from hypothesis import given, strategies as st

from conftest import load_golden
from tensorshift.verify import (VerificationReport, check_basis_norm_bound, check_beta_floor,
                                check_wedge_orthogonality, find_gap, lower_bound_operators,
                                lower_bound_vectors, run_lemma_suite,
                                verify_theorem, wedge_inner)
from tensorshift.verify import testvector_lower_bound as vector_floor
from tensorshift.weights import ExponentTuple, WeightSequence, parse_weightspec

R2 = 1 / math.sqrt(2)


# -- test vector ----------------------------------------------------------------

def test_testvector_examples(hardy):
    tv = vector_floor(hardy, (1, -1), 2)
    assert tv.P == 2
    assert tv.image_norm == pytest.approx(R2, abs=1e-12)
    for k in (0, 3, 7):
        assert vector_floor(hardy, (0, 0), k).image_norm == pytest.approx(1.0)


def test_testvector_floor_below_image(hardy):
    tv = vector_floor(hardy, (1, -1), 40, eps=0.1)
    assert 0 < tv.analytic_floor <= tv.image_norm + 1e-9
    assert tv.image_norm <= 1.0 + 1e-12


@pytest.mark.parametrize("l", [(1, -1), (1, 1, -1), (2, -1), (1, 1)])
@pytest.mark.parametrize("eps", [0.05, 0.3])
def test_testvector_floor_sweep(l, eps):
    w = WeightSequence.constant(1.0)
    for k in range(0, 25, 4):
        tv = vector_floor(w, l, k, eps)
        assert tv.analytic_floor <= tv.image_norm + 1e-9


# -- norm equality ---------------------------------------------------------------

def test_verify_hardy(hardy):
    rep = verify_theorem(hardy, (1, -1), "sym", 80)
    q = rep.quantities
    assert q["regular"] and q["lambda_power"] == 1.0 and q["full_tensor_norm"] == 1.0
    assert q["profile_max"] == pytest.approx(math.cos(math.pi / 82), abs=1e-12)
    assert rep.verdicts == {"upper_bound": True, "approaches_limit": True}
    assert rep.passed


def test_verify_half_wedge_matches_baseline():
    gold = load_golden("theorem_half_wedge.json")
    rep = verify_theorem(WeightSequence.constant(0.5), (1, 1, -1), "antisym", 40)
    assert rep.quantities["lambda_power"] == 0.125
    assert rep.quantities["profile_max"] <= 0.125 + 1e-9
    assert rep.quantities["profile_max"] == pytest.approx(gold["max_norm"], abs=1e-9)
    assert rep.passed


def test_verify_nonregular_equal_exponents(half_tail):
    rep = verify_theorem(half_tail, (2, 2), "sym", 20)
    assert rep.quantities["regular"] is False
    assert rep.quantities["profile_max"] == pytest.approx(0.25, abs=1e-12)
    assert rep.verdicts["approaches_limit"] is None
    assert "only for some tuples" in rep.notes[0]
    assert rep.passed


def test_verify_nonregular_gap_note(half_tail):
    rep = verify_theorem(half_tail, (1, -1), "sym", 20)
    assert "stays below" in rep.notes[0]


def test_verify_too_small_window_fails(hardy):
    # at k_max = 2 the profile max 0.707 is far below the limit 1
    rep = verify_theorem(hardy, (1, -1), "sym", 2, slack=0.05)
    assert rep.verdicts["approaches_limit"] is False
    assert rep.failures == ["approaches_limit"]


def test_report_round_trip(hardy):
    rep = verify_theorem(hardy, (1, 1), "antisym", 10)
    doc = rep.to_dict()
    assert doc["passed"] is rep.passed
    again = VerificationReport.from_dict(doc)
    assert again.to_dict() == doc


# -- gap search ------------------------------------------------------------------

def test_find_gap_example(half_tail):
    rep = find_gap(half_tail, [(1, -1), (1, 1), (2, 2), (2, -2)], "sym", 30, margin=0.25)
    rows = {tuple(r["exponents"]): r for r in rep.quantities["candidates"]}
    assert rows[(2, 2)]["gap"] == pytest.approx(0.0, abs=1e-12)
    assert rows[(1, -1)]["relative_gap"] == pytest.approx(0.5, abs=1e-9)
    assert rep.quantities["best"] == [1, -1]
    assert rep.verdicts["gap_exceeds_margin"] is True


def test_find_gap_equal_exponents_alone():
    w = parse_weightspec("prefix:1.0,1.0;tail:0.5")
    rep = find_gap(w, [(2, 2)], "sym", 20)
    assert rep.quantities["candidates"][0]["full_tensor_norm"] == 1.0
    assert rep.quantities["best_relative_gap"] == pytest.approx(0.0, abs=1e-12)
    assert rep.verdicts["gap_exceeds_margin"] is False


def test_find_gap_preconditions(hardy, half_tail):
    with pytest.raises(ValueError):
        find_gap(hardy, [(1, -1)], "sym", 5)
    with pytest.raises(ValueError):
        find_gap(half_tail, [], "sym", 5)


# -- lower bounds ----------------------------------------------------------------

def test_lower_bound_vector_examples():
    rep = lower_bound_vectors([[1.0], [0.0, 1.0]], trials=0)
    g = rep.quantities["given"]
    assert g["lhs"] == pytest.approx(R2) and g["norm"] == pytest.approx(R2)
    rep = lower_bound_vectors([[1.0], [1.0]], trials=0)
    assert rep.quantities["given"]["slack"] == pytest.approx(1 - R2)


def test_lower_bound_vectors_random():
    rep = lower_bound_vectors(trials=300, seed=7)
    assert rep.quantities["instances"] == 300
    assert rep.quantities["min_slack"] >= -1e-12
    assert rep.passed
    assert lower_bound_vectors(trials=50, seed=7).to_dict() == lower_bound_vectors(trials=50, seed=7).to_dict()


def test_lower_bound_operator_examples(hardy):
    rep = lower_bound_operators(hardy, (1, -1), probe_degrees=(5,), n_random=0)
    assert rep.quantities["basis_probes"][0]["lhs"] == pytest.approx(R2)
    assert rep.quantities["profile_max"] >= R2
    rep = lower_bound_operators(hardy, (-1, -1), probe_degrees=(0,), n_random=0)
    assert rep.quantities["basis_probes"][0]["lhs"] == 0.0
    assert rep.passed


def test_lower_bound_operators_random(hardy):
    rep = lower_bound_operators(hardy, (1, 1, -1), seed=3, n_random=40)
    assert rep.quantities["probes"] == 43
    assert rep.passed


# -- census checks ---------------------------------------------------------------

def test_wedge_inner():
    assert wedge_inner((0, 1), (0, 1)) == pytest.approx(0.5)
    assert wedge_inner((0, 1), (1, 0)) == pytest.approx(-0.5)
    assert wedge_inner((0, 1), (0, 2)) == 0.0


@given(st.lists(st.integers(-2, 2), min_size=2, max_size=3), st.integers(0, 12))
def test_instance_checks_hold(l, k):
    l = ExponentTuple(tuple(l))
    w = WeightSequence.constant(1.0)
    if not l.all_equal:
        assert check_basis_norm_bound(l, k)[0]
    assert check_beta_floor(w, l, k, 0.1)[0]
    assert check_wedge_orthogonality(l, k, 1)[0]


def test_lemma_suite_pair(hardy):
    rep = run_lemma_suite(2, 40, [(1, -1)], [hardy], [0.1])
    assert rep.passed, rep.failures
    v = rep.verdicts
    assert v["repeated_entry l=1,-1"] and v["basis_norm_bound l=1,-1"]
    assert v["partition_ratio n=2"]
    assert v["good_class_ratio l=1,-1 w=const:1.0 eps=0.1"] is True


def test_lemma_suite_all_equal_gate(hardy):
    rep = run_lemma_suite(2, 12, [(1, 1)], [hardy])
    for name in ("class_growth", "repeated_entry", "basis_norm_bound", "wedge_class_growth"):
        assert rep.verdicts[f"{name} l=1,1"] is None


def test_lemma_suite_triple(hardy):
    rep = run_lemma_suite(3, 20, [(1, 1, -1)], [hardy], [0.1])
    assert rep.passed, rep.failures


def test_lemma_suite_nonregular_gate(half_tail):
    rep = run_lemma_suite(2, 10, [(1, -1)], [half_tail])
    assert rep.verdicts["good_class_ratio l=1,-1 w=prefix:1.0;tail:0.5 eps=0.1"] is None
