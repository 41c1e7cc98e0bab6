"""Acceptance criteria 1-10, each at its stated tolerance.

Every test prints one ``[PASS]``/``[FAIL]`` line with the measured value.
Suites run once per session and are shared by the criteria they cover.
Runtime: about 7 minutes on one core, dominated by criteria 6 and 9.
"""

import functools
import math

import pytest

from repboost import harness

pytestmark = pytest.mark.slow


@functools.lru_cache(maxsize=None)
def suite(name):
    return {v["criterion"]: v for v in harness.SUITES[name](seed=0)}


def check(name, criterion, capsys):
    v = suite(name)[criterion]
    status = "PASS" if v["passed"] else "FAIL"
    with capsys.disabled():
        print(f"\n[{status}] criterion {criterion}: {v['name']}: measured {v['measured']} "
              f"(threshold {v['threshold']}, {v['runtime_s']}s"
              + (f", limit {v['runtime_limit_s']}s)" if v["runtime_limit_s"] else ")"))
    return v


def test_criterion_01_threshold_correctness(capsys):
    v = check("threshold", 1, capsys)
    assert v["details"]["m"] == 83_887
    assert v["details"]["low"]["trials"] == v["details"]["high"]["trials"] == 500
    assert v["passed"]


def test_criterion_02_threshold_replicability(capsys):
    v = check("threshold", 2, capsys)
    assert v["details"]["agree"] + v["details"]["disagree"] + v["details"]["both_failed"] == 500
    assert v["passed"]


def test_criterion_03_rejection_fidelity(capsys):
    v = check("rejection", 3, capsys)
    assert v["measured"]["tv"] <= 0.05 and v["measured"]["identity_exact"]
    assert v["passed"]


def test_criterion_04_rboost_star_correctness(capsys):
    v = check("rboost-star", 4, capsys)
    assert v["details"]["cap"] == math.ceil(16 / (1 / 16 * 0.1 ** 2))
    assert v["details"]["max_iterations"] <= v["details"]["cap"]
    assert v["measured"] >= 0.95
    assert v["passed"]


def test_criterion_05_scaled_measures(capsys):
    v = check("rboost-star", 5, capsys)
    assert v["details"]["checked"] > 0 and v["measured"] == 0
    assert v["passed"]


def test_criterion_06_rmetaboost_correctness(capsys):
    v = check("rmetaboost", 6, capsys)
    assert v["details"]["T"] == 24
    assert v["details"]["max_weak_calls"] <= 24 * v["details"]["inner_cap"]
    assert v["passed"]


def test_criterion_07_high_density(capsys):
    v = check("rmetaboost", 7, capsys)
    assert v["details"]["bound"] == 0.003125 and v["measured"] == 0
    assert v["passed"]


def test_criterion_08_exp_weight(capsys):
    v = check("rmetaboost", 8, capsys)
    assert v["details"]["audited"] > 0
    assert v["details"]["max_value"] <= math.e ** 3 * (1 + 1e-9)
    assert v["passed"]


def test_criterion_09_end_to_end_replicability(capsys):
    v = check("replicability", 9, capsys)
    assert v["details"]["mean_pair_s"] <= 5.0
    assert v["details"]["agree"] + v["details"]["disagree"] + v["details"]["both_failed"] == 100
    assert v["passed"]


def test_criterion_10_determinism(capsys):
    v = check("determinism", 10, capsys)
    assert v["passed"]
