import json

import numpy as np
import pytest

from qmeasure import (
    generate_random_instance,
    parse_scenario,
    report_to_dict,
    report_to_json,
    report_to_text,
    run_pipeline,
)

IDEAL_Z_UNIFORM = json.dumps({
    "object_dim": 2,
    "observable": {"preset": "pauli_z"},
    "initial_state": {"preset": "uniform"},
    "instrument": {"kind": "ideal"},
})

IDEAL_Z_BASIS0 = json.dumps({
    "object_dim": 2,
    "observable": {"preset": "pauli_z"},
    "initial_state": {"preset": "basis", "index": 0},
    "instrument": {"kind": "ideal"},
})

SWAP = json.dumps({
    "object_dim": 2,
    "observable": {"preset": "pauli_z"},
    "initial_state": {"preset": "uniform"},
    "instrument": {"kind": "custom", "transformers": [
        [[[0, 0], [1, 0]], [[0, 0], [0, 0]]],
        [[[0, 0], [0, 0]], [[1, 0], [0, 0]]],
    ]},
})


class TestRunPipeline:
    def test_ideal_z_on_uniform(self):
        report = run_pipeline(parse_scenario(IDEAL_Z_UNIFORM))
        assert report.overall_pass and report.error is None
        assert report.probabilities == pytest.approx((0.5, 0.5), abs=1e-12)
        assert report.schmidt_coefficients == pytest.approx((np.sqrt(0.5),) * 2, abs=1e-12)
        assert report.entropies.entanglement == pytest.approx(1.0, abs=1e-12)
        # coherence present before measurement, gone from the object after
        assert report.initial_commutator_norm == pytest.approx(np.sqrt(2.0), abs=1e-12)
        assert report.not_applicable == ()
        assert {v.label for v in report.verdicts} >= {
            "repeatability_condition",
            "probability_reproducibility",
            "conditional_states",
            "schmidt_reconstruction",
            "repeat_certainty",
            "definite_values",
            "schmidt_probability_match",
            "twin_diagonality",
            "compatibility_migration",
            "entropy_ledger",
            "entanglement_incompatibility_final",
            "entanglement_incompatibility_initial",
            "pointer_reading_marginals",
            "pointer_reading_commutators",
            "pointer_reading_incompatibility",
        }

    def test_ideal_z_on_eigenstate(self):
        report = run_pipeline(parse_scenario(IDEAL_Z_BASIS0))
        assert report.overall_pass
        assert len(report.schmidt_coefficients) == 1
        assert report.entropies.entanglement < 1e-12

    def test_ideal_x_on_basis_state(self):
        # degenerate Schmidt coefficients with an oblique raw eigenbasis;
        # the definite-value matching must rotate, not reject
        text = json.dumps({
            "object_dim": 2,
            "observable": {"preset": "pauli_x"},
            "initial_state": {"preset": "basis", "index": 0},
            "instrument": {"kind": "ideal"},
        })
        report = run_pipeline(parse_scenario(text))
        assert report.overall_pass and report.error is None
        assert report.entropies.entanglement == pytest.approx(1.0, abs=1e-12)

    def test_non_repeatable_custom_instrument(self):
        report = run_pipeline(parse_scenario(SWAP))
        assert not report.overall_pass and report.error is None
        by_label = {v.label: v for v in report.verdicts}
        assert not by_label["repeatability_condition"].passed
        assert by_label["probability_reproducibility"].passed
        assert "entanglement_incompatibility_final" in report.not_applicable
        assert "entanglement_incompatibility_initial" in report.not_applicable
        assert "definite_values" in report.not_applicable

    def test_overall_pass_matches_verdicts(self):
        for text in (IDEAL_Z_UNIFORM, SWAP):
            report = run_pipeline(parse_scenario(text))
            assert report.overall_pass == (report.error is None and all(v.passed for v in report.verdicts))

    def test_verdicts_carry_deviation_and_tolerance(self):
        report = run_pipeline(parse_scenario(IDEAL_Z_UNIFORM))
        for v in report.verdicts:
            assert np.isfinite(v.deviation) and v.tolerance > 0
            assert v.passed == (v.deviation <= v.tolerance)

    def test_deterministic_report(self):
        scenario = generate_random_instance(123, 5, 4)
        first = report_to_dict(run_pipeline(scenario))
        second = report_to_dict(run_pipeline(scenario))
        assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)

    def test_tolerance_override_applies_everywhere(self):
        scenario = parse_scenario(IDEAL_Z_UNIFORM)
        import dataclasses

        loose = dataclasses.replace(scenario, tolerance=0.5)
        report = run_pipeline(loose)
        assert all(v.tolerance == 0.5 for v in report.verdicts)


class TestReportSerialization:
    def test_json_and_text_share_the_verdict_set(self):
        report = run_pipeline(parse_scenario(IDEAL_Z_UNIFORM))
        doc = report_to_dict(report)
        text = report_to_text(report)
        json_labels = {v["label"] for v in doc["verdicts"]}
        assert all(label in text for label in json_labels)
        assert set(doc["not_applicable"]) == set(report.not_applicable)

    def test_timing_excluded_by_default(self):
        report = run_pipeline(parse_scenario(IDEAL_Z_UNIFORM))
        assert "duration_seconds" not in report_to_dict(report)
        assert "duration_seconds" in report_to_dict(report, include_timing=True)
        assert report.duration_seconds > 0

    def test_json_round_trip(self):
        report = run_pipeline(parse_scenario(IDEAL_Z_UNIFORM))
        doc = json.loads(report_to_json(report))
        assert doc["overall_pass"] is True
        assert doc["scenario"]["observable"] == {"preset": "pauli_z"}
