"""Bars-and-stripes data: enumeration, labeling, synthesis, batching.

A bars-and-stripes image on an m x n grid is valid when every row is
constant or every column is constant; there are exactly 2^m + 2^n - 2 such
images.  For the 2x2 task the six valid images fall into three categories,
each encoded as a one-hot label:

* HORIZONTAL (001): constant rows, not all equal (0011, 1100)
* VERTICAL   (010): constant columns, not all equal (0101, 1010)
* UNIFORM    (100): all pixels equal (0000, 1111)
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import CapacityError, ValidationError

MAX_PIXELS = 20


class Category(Enum):
    HORIZONTAL = "001"
    VERTICAL = "010"
    UNIFORM = "100"

    @property
    def label(self) -> str:
        return self.value


LABELS = tuple(c.label for c in Category)


@dataclass(frozen=True)
class BasImage:
    """Row-major pixel grid of 0/1 values."""

    m: int
    n: int
    pixels: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "pixels", tuple(int(p) for p in self.pixels))
        if len(self.pixels) != self.m * self.n:
            raise ValidationError("pixel count must equal m*n")
        if any(p not in (0, 1) for p in self.pixels):
            raise ValidationError("pixels must be 0 or 1")

    @property
    def bits(self) -> str:
        return "".join(str(p) for p in self.pixels)

    def rows(self) -> list[tuple[int, ...]]:
        return [self.pixels[r * self.n:(r + 1) * self.n] for r in range(self.m)]

    def columns(self) -> list[tuple[int, ...]]:
        return [self.pixels[c::self.n] for c in range(self.n)]


@dataclass(frozen=True)
class Sample:
    """A data bitstring paired with its one-hot condition label."""

    data_bits: str
    label: str

    def __post_init__(self):
        if set(self.data_bits) - {"0", "1"} or set(self.label) - {"0", "1"}:
            raise ValidationError("bits must be 0/1 characters")
        if self.label.count("1") != 1:
            raise ValidationError("label must be one-hot")

    def vector(self) -> np.ndarray:
        """Data bits then label bits as a float vector."""
        return np.array([float(b) for b in self.data_bits + self.label])


def _constant(groups) -> bool:
    return all(len(set(g)) == 1 for g in groups)


def enumerate_valid(m: int, n: int) -> list[BasImage]:
    """All valid images, sorted by pixel value read as an integer."""
    if m < 1 or n < 1:
        raise ValidationError("grid dimensions must be positive")
    if m * n > MAX_PIXELS:
        raise CapacityError(f"grid exceeds {MAX_PIXELS} pixels")
    found = set()
    for row_vals in itertools.product((0, 1), repeat=m):
        found.add(tuple(v for v in row_vals for _ in range(n)))
    for col_vals in itertools.product((0, 1), repeat=n):
        found.add(col_vals * m)
    images = [BasImage(m, n, px) for px in found]
    images.sort(key=lambda img: int(img.bits, 2))
    return images


def categorize(img: BasImage) -> Category:
    """Category of a valid image; invalid images are rejected."""
    rows_const = _constant(img.rows())
    cols_const = _constant(img.columns())
    if not rows_const and not cols_const:
        raise ValidationError(f"not a valid bars-and-stripes image: {img.bits}")
    if len(set(img.pixels)) == 1:
        return Category.UNIFORM
    if rows_const:
        return Category.HORIZONTAL
    return Category.VERTICAL


def synthesize_training_set(count: int, rng_seed: int,
                            stratified: bool = False) -> list[Sample]:
    """Samples drawn uniformly over the six valid 2x2 images, each labeled.

    With stratified=True, count must divide evenly by six and each image
    appears exactly count/6 times, in sorted image order.
    """
    if count < 1:
        raise ValidationError("count must be positive")
    images = enumerate_valid(2, 2)
    pool = [Sample(img.bits, categorize(img).label) for img in images]
    if stratified:
        if count % len(pool):
            raise ValidationError(
                f"stratified count must be a multiple of {len(pool)}")
        return [s for s in pool for _ in range(count // len(pool))]
    rng = np.random.default_rng(rng_seed)
    picks = rng.integers(0, len(pool), size=count)
    return [pool[i] for i in picks]


def batches(dataset: list[Sample], batch_size: int,
            rng_seed: int) -> list[list[Sample]]:
    """Seeded full shuffle, then contiguous chunks of batch_size."""
    if batch_size < 1:
        raise ValidationError("batch_size must be positive")
    rng = np.random.default_rng(rng_seed)
    order = rng.permutation(len(dataset))
    shuffled = [dataset[i] for i in order]
    return [shuffled[i:i + batch_size]
            for i in range(0, len(shuffled), batch_size)]
