"""Quality scores for generated samples and entanglement diagnostics.

Three scores are tracked per evaluation: whether sampled images are valid
bars-and-stripes patterns, whether they agree with the label they were
conditioned on, and how close the valid ones come to the uniform target
distribution.  Their minimum is the composite accuracy used for early
stopping.
"""
from __future__ import annotations

import numpy as np

from .bas import LABELS, BasImage, Sample, categorize, enumerate_valid
from .circuits import (
    ConditionSpec,
    ParamCircuit,
    bind,
    build_condition_encoder,
    build_generator,
    offset_ops,
    simulate,
)
from .errors import ValidationError
from .simulator import QuantumState, entanglement_entropy, sample as sample_state

from dataclasses import dataclass

VALID_BITS = tuple(img.bits for img in enumerate_valid(2, 2))

_BALANCED_CUTS = ((0, 1), (0, 2), (0, 3))


@dataclass(frozen=True)
class EvalReport:
    """Scores plus a per-label histogram over every data pattern."""

    validity: float
    condition_match: float
    uniformity: float
    composite: float
    histogram: dict

    def __post_init__(self):
        for name in ("validity", "condition_match", "uniformity", "composite"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValidationError(f"{name} must lie in [0, 1], got {v}")


def split_joint_bits(bits: str, n_data: int = 4) -> Sample:
    """Split a joint measurement string into data bits and label bits."""
    if len(bits) <= n_data:
        raise ValidationError(f"joint string too short: {bits!r}")
    return Sample(bits[:n_data], bits[n_data:])


def _require_nonempty(samples) -> None:
    if len(samples) == 0:
        raise ValidationError("need at least one sample")


def validity_rate(samples: list[Sample]) -> float:
    """Fraction of samples whose image is a valid bars-and-stripes pattern."""
    _require_nonempty(samples)
    hits = sum(1 for s in samples if s.data_bits in VALID_BITS)
    return hits / len(samples)


def condition_match_rate(samples: list[Sample]) -> float:
    """Fraction of samples that are valid and agree with their label."""
    _require_nonempty(samples)
    hits = 0
    for s in samples:
        if s.data_bits not in VALID_BITS:
            continue
        img = BasImage(2, 2, tuple(int(b) for b in s.data_bits))
        if categorize(img).label == s.label:
            hits += 1
    return hits / len(samples)


def uniformity_score(samples: list[Sample]) -> float:
    """One minus the total variation distance to the uniform target.

    The empirical distribution is restricted to the six valid images and
    renormalized first; a set with no valid image at all scores zero.
    """
    _require_nonempty(samples)
    counts = np.array([sum(1 for s in samples if s.data_bits == b)
                       for b in VALID_BITS], dtype=float)
    total = counts.sum()
    if total == 0:
        return 0.0
    empirical = counts / total
    tv = 0.5 * np.sum(np.abs(empirical - 1.0 / len(VALID_BITS)))
    return float(1.0 - tv)


def composite_accuracy(validity: float, condition_match: float,
                       uniformity: float) -> float:
    """The conjunction score: all three checks must be high at once."""
    return min(validity, condition_match, uniformity)


def evaluate_samples(samples: list[Sample]) -> EvalReport:
    """Compute every score and the per-label pattern histogram."""
    _require_nonempty(samples)
    width = len(samples[0].data_bits)
    histogram = {label: {format(v, f"0{width}b"): 0 for v in range(2 ** width)}
                 for label in LABELS}
    for s in samples:
        histogram[s.label][s.data_bits] += 1
    v = validity_rate(samples)
    c = condition_match_rate(samples)
    u = uniformity_score(samples)
    return EvalReport(v, c, u, composite_accuracy(v, c, u), histogram)


def degenerate_condition_spec(label: str, m: int) -> ConditionSpec:
    """Condition distribution with all probability on one label."""
    if label not in LABELS or len(label) != m:
        raise ValidationError(f"unknown label: {label!r}")
    category = label[::-1].index("1") + 1
    return ConditionSpec(m, tuple(1.0 if j == category else 0.0
                                  for j in range(1, m + 1)))


def conditional_histogram(model, label: str, shots: int,
                          rng_seed: int) -> dict[str, int]:
    """Pattern counts after pinning the condition register to one label.

    The condition encoder is rebuilt for the degenerate distribution that
    puts all weight on `label`; the trained rotation angles are untouched.
    """
    encoder = build_condition_encoder(
        degenerate_condition_spec(label, model.n_cond))
    generator = build_generator(model.n_data, model.n_cond, model.layers,
                                model.topology)
    ops = tuple(offset_ops(encoder.ops, model.n_data)) + tuple(
        bind(generator, model.theta))
    state = simulate(ParamCircuit(model.n_data + model.n_cond, ops, 0))
    counts = {format(v, f"0{model.n_data}b"): 0
              for v in range(2 ** model.n_data)}
    for bits in sample_state(state, shots, rng_seed):
        counts[bits[:model.n_data]] += 1
    return counts


def _entropies(amplitudes: np.ndarray) -> list[float]:
    state = QuantumState(4, amplitudes / np.linalg.norm(amplitudes))
    return [entanglement_entropy(state, cut) for cut in _BALANCED_CUTS]


def bas_state_entropy_check() -> tuple[float, float]:
    """Entanglement bars for the four-qubit image register, in bits.

    The lower bar is the smallest balanced-cut entropy of the uniform
    superposition over the six valid images; the upper bar is the largest
    balanced-cut entropy any four-qubit state can reach, realized here by
    a known maximally entangled reference state over the weight-two basis
    states with cube-root-of-unity phases.
    """
    bas = np.zeros(16, dtype=complex)
    for bits in VALID_BITS:
        bas[int(bits, 2)] = 1.0
    low = min(_entropies(bas))

    w = np.exp(2j * np.pi / 3.0)
    ref = np.zeros(16, dtype=complex)
    ref[0b0011] = ref[0b1100] = 1.0
    ref[0b0101] = ref[0b1010] = w
    ref[0b0110] = ref[0b1001] = w * w
    high = max(_entropies(ref))
    return low, high
