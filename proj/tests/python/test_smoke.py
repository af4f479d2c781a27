"""Smoke tests for the freqlab extension module."""

import json
import math

import freqlab


def test_ghz_state_is_normalized():
    amps = freqlab.ghz_state()
    assert len(amps) == 8
    assert math.isclose(sum(abs(a) ** 2 for a in amps), 1.0, abs_tol=1e-12)


def test_canonical_correlations():
    amps = freqlab.ghz_state()
    settings = freqlab.canonical_settings()
    expected = [1.0, 1.0, 1.0, -1.0]
    for phases, sign in zip(settings, expected):
        assert math.isclose(freqlab.correlation(amps, phases), sign, abs_tol=1e-12)


def test_generic_correlation_is_sine_of_phase_sum():
    amps = freqlab.ghz_state()
    c = freqlab.correlation(amps, (0.3, 0.5, 0.7))
    assert math.isclose(c, math.sin(1.5), abs_tol=1e-12)


def test_outcome_distribution_sums_to_one():
    amps = freqlab.ghz_state()
    dist = freqlab.outcome_distribution(amps, (0.3, 0.5, 0.7))
    assert set(len(k) for k in dist) == {3}
    assert math.isclose(sum(dist.values()), 1.0, abs_tol=1e-12)


def test_sampling_is_reproducible_and_parity_certain():
    amps = freqlab.ghz_state()
    phases = freqlab.canonical_settings()[0]
    first = freqlab.sample_outcomes(amps, phases, 2000, 7)
    second = freqlab.sample_outcomes(amps, phases, 2000, 7)
    assert first == second
    for outcome in first:
        assert outcome.count("-") % 2 == 0  # product +1


def test_lhv_enumeration():
    result = freqlab.lhv_enumerate()
    assert result["satisfying_count"] == 0
    assert result["total"] == 64
    assert result["max_satisfiable"] == 3

    relaxed = freqlab.lhv_enumerate([("yxx", 1), ("xyx", 1), ("xxy", 1), ("yyy", 1)])
    assert relaxed["satisfying_count"] == 8


def test_joint_feasibility_matches_enumeration():
    cert = freqlab.joint_feasibility()
    assert not cert["feasible"]
    assert cert["per_constraint_counts"] == [32, 32, 32, 32]


def test_stabilization_audit():
    sequence = ["a", "b"] * 2000
    verdict = freqlab.stabilization_audit(sequence, [500, 1000, 2000, 4000], 5.0)
    assert verdict["stabilized"]
    assert math.isclose(verdict["probabilities"]["a"], 0.5, abs_tol=1e-12)


def test_frequency_counts():
    counts = freqlab.frequency_counts(["a", "a", "b"])
    assert counts == {"a": 2, "b": 1}


def test_measure_predicates_and_density():
    assert freqlab.is_equivalent(["1/2", "1/2"], ["1/4", "3/4"])
    assert not freqlab.is_absolutely_continuous(["1/2", "1/2"], ["1", "0"])
    singular = freqlab.is_singular(["1", "0"], ["0", "1"])
    assert singular["singular"]
    assert singular["witness"] == ["w2"]

    density = freqlab.radon_nikodym(["3/4", "1/4"], ["1/2", "1/2"])
    assert density == ["3/2", "1/2"]


def test_singular_resolution():
    res = freqlab.singular_resolution()
    assert res["own_plus_event_prob"] == ["1", "1", "1"]
    assert res["minus_event_prob_4"] == "1"
    assert res["sigma_plus_under_p4"] == "0"
    assert res["pairwise_singular"]


def test_run_scenario_lhv():
    result = freqlab.run_scenario("lhv")
    assert result["exit_code"] == 0
    report = json.loads(result["json"])
    assert report["result"]["satisfying_count"] == 0
    assert report["result"]["max_satisfiable"] == 3


def test_run_scenario_determinism():
    options = {"n": "1500", "seed": "11"}
    first = json.loads(freqlab.run_scenario("ghz-sample", options)["json"])
    second = json.loads(freqlab.run_scenario("ghz-sample", options)["json"])
    first.pop("duration_ms")
    second.pop("duration_ms")
    assert first == second
