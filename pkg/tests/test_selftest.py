"""Tests for the seeded self-test checks."""

from __future__ import annotations

import random

import pytest

from blockset.core.selftest import CHECKS, SAMPLE_SHAPES, run_selftest, sample_bitmap


def test_selftest_passes_on_default_seed() -> None:
    report = run_selftest(samples=30)
    assert report.passed
    assert [check.name for check in report.checks] == list(CHECKS)
    assert all(check.samples == 30 for check in report.checks)
    assert report.to_dict()["passed"] is True


def test_sampling_is_reproducible() -> None:
    first = [sample_bitmap(random.Random(7)) for _ in range(5)]
    second = [sample_bitmap(random.Random(7)) for _ in range(5)]
    assert first == second
    for bitmap in first:
        assert not bitmap.is_empty()
        assert (bitmap.k, bitmap.ell) in SAMPLE_SHAPES


def test_selftest_rejects_non_positive_samples() -> None:
    with pytest.raises(ValueError):
        run_selftest(samples=0)
