#!/usr/bin/env python3
"""Tests for the worker cap and the order-preserving parallel map."""

import threading

import pytest

from kappa_nc.core.workers import THREADS_ENV_VAR, chunked, parallel_map, worker_count


class TestWorkerCount:
    """KAPPA_NC_THREADS handling."""

    def test_unset_uses_default(self, monkeypatch):
        monkeypatch.delenv(THREADS_ENV_VAR, raising=False)
        assert worker_count(default=3) == 3

    def test_unset_without_default_is_capped(self, monkeypatch):
        monkeypatch.delenv(THREADS_ENV_VAR, raising=False)
        assert 1 <= worker_count() <= 8

    def test_explicit_value(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV_VAR, "5")
        assert worker_count() == 5

    @pytest.mark.parametrize("raw", ["0", "-2", "many"])
    def test_invalid_value_falls_back_to_one(self, monkeypatch, raw):
        monkeypatch.setenv(THREADS_ENV_VAR, raw)
        assert worker_count() == 1


class TestChunked:
    """Contiguous splitting."""

    def test_even_split(self):
        assert chunked([1, 2, 3, 4], 2) == [[1, 2], [3, 4]]

    def test_remainder_goes_to_leading_chunks(self):
        assert chunked(list(range(7)), 3) == [[0, 1, 2], [3, 4], [5, 6]]

    def test_more_chunks_than_items(self):
        assert chunked([1, 2], 5) == [[1], [2]]

    def test_empty(self):
        assert chunked([], 4) == []


class TestParallelMap:
    """Results come back in input order regardless of worker count."""

    def test_order_preserved(self):
        items = list(range(50))
        assert parallel_map(lambda x: x * x, items, workers=4) == [x * x for x in items]

    def test_serial_when_single_worker(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV_VAR, "1")
        threads = set()

        def record(x):
            threads.add(threading.get_ident())
            return x

        assert parallel_map(record, [1, 2, 3]) == [1, 2, 3]
        assert threads == {threading.get_ident()}

    def test_exception_propagates(self):
        def fail(x):
            raise ValueError(x)

        with pytest.raises(ValueError):
            parallel_map(fail, [1, 2], workers=2)
