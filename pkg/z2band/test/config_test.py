import os

import pytest

from z2band.src.config import THREADS_ENV, TOLERANCES, Tolerances, thread_count


class TestThreadCount:
    """Test suite for the worker-thread setting"""

    def test_explicit(self, mocker):
        """A positive value is used as-is"""
        mocker.patch.dict(os.environ, {THREADS_ENV: "3"})
        assert thread_count() == 3

    def test_zero_means_all_cpus(self, mocker):
        """0 and unset fall back to the CPU count"""
        mocker.patch("z2band.src.config.os.cpu_count", return_value=6)
        mocker.patch.dict(os.environ, {THREADS_ENV: "0"})
        assert thread_count() == 6
        mocker.patch.dict(os.environ, {}, clear=True)
        assert thread_count() == 6

    def test_garbage_is_ignored(self, mocker):
        """Non-integers are logged and ignored"""
        mocker.patch("z2band.src.config.os.cpu_count", return_value=2)
        mocker.patch.dict(os.environ, {THREADS_ENV: "many"})
        assert thread_count() == 2

    def test_negative(self, mocker):
        """Negative counts are rejected"""
        mocker.patch.dict(os.environ, {THREADS_ENV: "-1"})
        with pytest.raises(ValueError):
            thread_count()


class TestTolerances:
    """Test suite for the shared thresholds"""

    def test_frozen(self):
        """Tolerances cannot be changed in place"""
        with pytest.raises(AttributeError):
            TOLERANCES.gap_min = 0.0

    def test_override(self):
        """Single thresholds can be replaced in a copy"""
        loose = Tolerances(gap_min=1e-3)
        assert loose.gap_min == 1e-3
        assert loose.skew == TOLERANCES.skew
