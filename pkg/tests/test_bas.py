"""Dataset tests; the validity oracle is an independent brute-force predicate."""
from __future__ import annotations

import numpy as np
import pytest

from qcgan.bas import (
    BasImage,
    Category,
    Sample,
    batches,
    categorize,
    enumerate_valid,
    synthesize_training_set,
)
from qcgan.errors import CapacityError, ValidationError


def brute_force_valid(bits: str, m: int, n: int) -> bool:
    """Validity by direct definition on the flat string."""
    rows = [bits[r * n:(r + 1) * n] for r in range(m)]
    cols = ["".join(bits[r * n + c] for r in range(m)) for c in range(n)]
    rows_ok = all(len(set(r)) == 1 for r in rows)
    cols_ok = all(len(set(c)) == 1 for c in cols)
    return rows_ok or cols_ok


class TestEnumerateValid:
    def test_two_by_two(self):
        got = [img.bits for img in enumerate_valid(2, 2)]
        assert got == ["0000", "0011", "0101", "1010", "1100", "1111"]

    def test_one_by_one(self):
        assert [img.bits for img in enumerate_valid(1, 1)] == ["0", "1"]

    def test_two_by_three_count(self):
        assert len(enumerate_valid(2, 3)) == 10

    def test_matches_brute_force_up_to_twelve_pixels(self):
        for m in range(1, 13):
            for n in range(1, 13):
                if m * n > 12:
                    continue
                want = {format(v, f"0{m * n}b") for v in range(2 ** (m * n))
                        if brute_force_valid(format(v, f"0{m * n}b"), m, n)}
                got = {img.bits for img in enumerate_valid(m, n)}
                assert got == want, (m, n)
                assert len(got) == 2 ** m + 2 ** n - 2, (m, n)

    def test_sorted_by_integer_value(self):
        values = [int(img.bits, 2) for img in enumerate_valid(3, 2)]
        assert values == sorted(values)

    def test_guards(self):
        with pytest.raises(ValidationError):
            enumerate_valid(0, 2)
        with pytest.raises(CapacityError):
            enumerate_valid(5, 5)


class TestCategorize:
    @pytest.mark.parametrize("bits,want", [
        ("0011", Category.HORIZONTAL),
        ("1100", Category.HORIZONTAL),
        ("0101", Category.VERTICAL),
        ("1010", Category.VERTICAL),
        ("0000", Category.UNIFORM),
        ("1111", Category.UNIFORM),
    ])
    def test_two_by_two_categories(self, bits, want):
        img = BasImage(2, 2, tuple(int(b) for b in bits))
        assert categorize(img) is want

    def test_invalid_image_rejected(self):
        with pytest.raises(ValidationError):
            categorize(BasImage(2, 2, (0, 1, 1, 0)))

    def test_partition_is_two_two_two(self):
        cats = [categorize(img) for img in enumerate_valid(2, 2)]
        assert all(cats.count(c) == 2 for c in Category)

    def test_label_encoding(self):
        assert Category.HORIZONTAL.label == "001"
        assert Category.VERTICAL.label == "010"
        assert Category.UNIFORM.label == "100"


class TestSample:
    def test_vector_layout(self):
        np.testing.assert_array_equal(
            Sample("0011", "001").vector(), [0, 0, 1, 1, 0, 0, 1])

    def test_label_must_be_one_hot(self):
        with pytest.raises(ValidationError):
            Sample("0011", "011")
        with pytest.raises(ValidationError):
            Sample("0011", "000")


class TestSynthesize:
    def test_counts_concentrate(self):
        samples = synthesize_training_set(6000, rng_seed=123)
        assert len(samples) == 6000
        for img in enumerate_valid(2, 2):
            hits = sum(1 for s in samples if s.data_bits == img.bits)
            assert abs(hits - 1000) <= 87  # 3 sigma of Binomial(6000, 1/6)

    def test_labels_match_images(self):
        for s in synthesize_training_set(500, rng_seed=5):
            img = BasImage(2, 2, tuple(int(b) for b in s.data_bits))
            assert categorize(img).label == s.label

    def test_stratified_exhaustive(self):
        samples = synthesize_training_set(6, rng_seed=0, stratified=True)
        assert sorted(s.data_bits for s in samples) == [
            "0000", "0011", "0101", "1010", "1100", "1111"]

    def test_stratified_multiple(self):
        samples = synthesize_training_set(12, rng_seed=0, stratified=True)
        assert len(samples) == 12
        assert all(sum(1 for s in samples if s.data_bits == b) == 2
                   for b in {"0000", "0011", "0101", "1010", "1100", "1111"})

    def test_stratified_requires_multiple_of_six(self):
        with pytest.raises(ValidationError):
            synthesize_training_set(7, rng_seed=0, stratified=True)

    def test_determinism(self):
        a = synthesize_training_set(100, rng_seed=9)
        b = synthesize_training_set(100, rng_seed=9)
        assert a == b


class TestBatches:
    def test_batch_count(self):
        dataset = synthesize_training_set(6000, rng_seed=1)
        got = batches(dataset, 40, rng_seed=2)
        assert len(got) == 150
        assert all(len(b) == 40 for b in got)

    def test_single_batch_is_permutation(self):
        dataset = synthesize_training_set(30, rng_seed=1)
        got = batches(dataset, 30, rng_seed=7)
        assert len(got) == 1
        assert sorted(map(repr, got[0])) == sorted(map(repr, dataset))

    def test_shuffle_preserves_multiset(self):
        dataset = synthesize_training_set(200, rng_seed=3)
        flat = [s for b in batches(dataset, 16, rng_seed=4) for s in b]
        assert sorted(map(repr, flat)) == sorted(map(repr, dataset))

    def test_short_tail_batch(self):
        dataset = synthesize_training_set(10, rng_seed=3)
        sizes = [len(b) for b in batches(dataset, 4, rng_seed=0)]
        assert sizes == [4, 4, 2]

    def test_determinism(self):
        dataset = synthesize_training_set(100, rng_seed=3)
        a = batches(dataset, 8, rng_seed=11)
        b = batches(dataset, 8, rng_seed=11)
        assert a == b
