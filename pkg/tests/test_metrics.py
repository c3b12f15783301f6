"""Metric tests against hand-computed values and structural invariants."""
from __future__ import annotations

import math
from types import SimpleNamespace

import numpy as np
import pytest

from qcgan.bas import LABELS, Sample
from qcgan.circuits import (
    ParamCircuit,
    Topology,
    bind,
    build_condition_encoder,
    build_generator,
    offset_ops,
    simulate,
)
from qcgan.errors import ValidationError
from qcgan.metrics import (
    EvalReport,
    bas_state_entropy_check,
    composite_accuracy,
    condition_match_rate,
    conditional_histogram,
    degenerate_condition_spec,
    evaluate_samples,
    split_joint_bits,
    uniformity_score,
    validity_rate,
)
from qcgan.simulator import probabilities

ALL_SIX = [Sample("0011", "001"), Sample("1100", "001"),
           Sample("0101", "010"), Sample("1010", "010"),
           Sample("0000", "100"), Sample("1111", "100")]


def stub_model(theta, topology=Topology.ALL_TO_ALL, layers=3):
    return SimpleNamespace(n_data=4, n_cond=3, layers=layers,
                           topology=topology, theta=np.asarray(theta, float))


class TestValidity:
    def test_all_valid(self):
        assert validity_rate(ALL_SIX) == 1.0

    def test_all_invalid(self):
        assert validity_rate([Sample("0110", "001")] * 5) == 0.0

    def test_half(self):
        mixed = [Sample("0011", "001"), Sample("0110", "001")]
        assert validity_rate(mixed) == 0.5

    def test_empty_rejected(self):
        with pytest.raises(ValidationError):
            validity_rate([])


class TestConditionMatch:
    def test_match(self):
        assert condition_match_rate([Sample("0011", "001")]) == 1.0

    def test_label_mismatch(self):
        assert condition_match_rate([Sample("0011", "010")]) == 0.0

    def test_invalid_image_never_matches(self):
        assert condition_match_rate([Sample("0110", "001")]) == 0.0

    def test_mixture(self):
        samples = ALL_SIX + [Sample("0011", "100"), Sample("1001", "001")]
        assert condition_match_rate(samples) == 6 / 8


class TestUniformity:
    def test_uniform_is_one(self):
        assert abs(uniformity_score(ALL_SIX) - 1.0) < 1e-12

    def test_point_mass(self):
        score = uniformity_score([Sample("0011", "001")] * 10)
        assert abs(score - 1 / 6) < 1e-12

    def test_two_at_half(self):
        samples = [Sample("0011", "001"), Sample("1100", "001")]
        assert abs(uniformity_score(samples) - 1 / 3) < 1e-12

    def test_no_valid_samples(self):
        assert uniformity_score([Sample("0110", "001")]) == 0.0

    def test_invalid_samples_ignored(self):
        # restriction to valid images: junk must not change the score
        base = uniformity_score(ALL_SIX)
        noisy = uniformity_score(ALL_SIX + [Sample("0110", "001")] * 7)
        assert abs(base - noisy) < 1e-12

    def test_duplication_invariance(self):
        samples = ALL_SIX[:4]
        assert abs(uniformity_score(samples)
                   - uniformity_score(samples * 3)) < 1e-12

    def test_permutation_invariance(self):
        samples = ALL_SIX + [Sample("0011", "001")] * 3
        assert uniformity_score(samples) == uniformity_score(samples[::-1])


class TestComposite:
    def test_perfect(self):
        assert composite_accuracy(1.0, 1.0, 1.0) == 1.0

    def test_min_rule(self):
        assert composite_accuracy(0.99, 0.97, 0.9715) == 0.97

    def test_zero_dominates(self):
        assert composite_accuracy(1.0, 0.0, 1.0) == 0.0

    def test_monotone(self):
        low = composite_accuracy(0.5, 0.6, 0.7)
        assert composite_accuracy(0.6, 0.6, 0.7) >= low
        assert composite_accuracy(0.5, 0.7, 0.7) >= low
        assert composite_accuracy(0.5, 0.6, 0.8) >= low


class TestEvaluateSamples:
    def test_report_fields(self):
        report = evaluate_samples(ALL_SIX)
        assert report.validity == 1.0
        assert report.condition_match == 1.0
        assert abs(report.uniformity - 1.0) < 1e-12
        assert report.composite == composite_accuracy(
            report.validity, report.condition_match, report.uniformity)

    def test_histogram_counts(self):
        samples = ALL_SIX + [Sample("0011", "001")] * 2
        report = evaluate_samples(samples)
        assert report.histogram["001"]["0011"] == 3
        assert report.histogram["010"]["0101"] == 1
        assert report.histogram["100"]["0110"] == 0
        total = sum(c for by_label in report.histogram.values()
                    for c in by_label.values())
        assert total == len(samples)

    def test_histogram_covers_all_patterns(self):
        report = evaluate_samples(ALL_SIX)
        for label in LABELS:
            assert len(report.histogram[label]) == 16

    def test_score_range_enforced(self):
        with pytest.raises(ValidationError):
            EvalReport(1.2, 0.5, 0.5, 0.5, {})


class TestSplitJointBits:
    def test_split(self):
        s = split_joint_bits("0011001")
        assert s.data_bits == "0011" and s.label == "001"

    def test_too_short(self):
        with pytest.raises(ValidationError):
            split_joint_bits("0011")


class TestConditionalHistogram:
    def test_untrained_model_is_identity(self):
        model = stub_model(np.zeros(90))
        for label in LABELS:
            counts = conditional_histogram(model, label, 200, rng_seed=1)
            assert counts["0000"] == 200
            assert sum(counts.values()) == 200

    def test_counts_sum_to_shots(self):
        rng = np.random.default_rng(0)
        model = stub_model(rng.uniform(-np.pi, np.pi, 90))
        counts = conditional_histogram(model, "010", 500, rng_seed=2)
        assert sum(counts.values()) == 500
        assert all(v >= 0 for v in counts.values())

    def test_unknown_label_rejected(self):
        with pytest.raises(ValidationError):
            conditional_histogram(stub_model(np.zeros(90)), "011", 10, 0)

    def test_degenerate_encoder_pins_condition_register(self):
        # under any rotation angles the condition marginal stays on the label
        rng = np.random.default_rng(7)
        generator = build_generator(4, 3, 2, Topology.ALL_TO_ALL)
        for label in LABELS:
            encoder = build_condition_encoder(degenerate_condition_spec(label, 3))
            theta = rng.uniform(-np.pi, np.pi, generator.n_params)
            ops = tuple(offset_ops(encoder.ops, 4)) + tuple(bind(generator, theta))
            probs = probabilities(simulate(ParamCircuit(7, ops, 0)))
            stray = sum(p for v, p in enumerate(probs)
                        if format(v, "07b")[4:] != label)
            assert stray < 1e-12, label

    def test_degenerate_spec_probabilities(self):
        spec = degenerate_condition_spec("001", 3)
        assert spec.probs == (1.0, 0.0, 0.0)
        assert degenerate_condition_spec("100", 3).probs == (0.0, 0.0, 1.0)


class TestEntropyCheck:
    def test_reference_values(self):
        low, high = bas_state_entropy_check()
        assert abs(low - 1.25163) < 1e-3
        assert abs(high - 1.79248) < 1e-3

    def test_closed_forms(self):
        low, high = bas_state_entropy_check()
        want_low = -(2 / 3) * math.log2(2 / 3) - (1 / 3) * math.log2(1 / 6)
        want_high = 1.0 + 0.5 * math.log2(3.0)
        assert abs(low - want_low) < 1e-9
        assert abs(high - want_high) < 1e-9

    def test_ordering(self):
        low, high = bas_state_entropy_check()
        assert 1.0 < low < high < 2.0
