"""Timing of verification suites for command reports."""

from __future__ import annotations

import logging
import time
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterator, List

logger = logging.getLogger(__name__)


@dataclass
class PerformanceMetrics:
    """Timing record for one named suite."""
    name: str
    call_count: int = 0
    error_count: int = 0
    total_time: float = 0.0
    min_time: float = float("inf")
    max_time: float = 0.0

    def add_execution(self, execution_time: float, success: bool = True) -> None:
        """Add one execution time measurement (seconds)."""
        self.call_count += 1
        self.total_time += execution_time

        if success:
            self.min_time = min(self.min_time, execution_time)
            self.max_time = max(self.max_time, execution_time)
        else:
            self.error_count += 1

    @property
    def average_time(self) -> float:
        if self.call_count == 0:
            return 0.0
        return self.total_time / self.call_count

    @property
    def success_rate(self) -> float:
        """Success rate as percentage."""
        if self.call_count == 0:
            return 100.0
        return ((self.call_count - self.error_count) / self.call_count) * 100


class PerformanceMonitor:
    """Measure named suites and warn when a runtime budget is exceeded."""

    def __init__(self) -> None:
        self._metrics: Dict[str, PerformanceMetrics] = {}
        self._thresholds: Dict[str, float] = {}
        self._warning_callbacks: List[Callable[[str, float], None]] = []

    def add_warning_callback(self, callback: Callable[[str, float], None]) -> None:
        self._warning_callbacks.append(callback)

    def set_threshold(self, name: str, threshold_s: float) -> None:
        """Set the runtime budget (seconds) of a suite."""
        self._thresholds[name] = threshold_s

    @contextmanager
    def measure(self, name: str) -> Iterator[None]:
        """Context manager timing the enclosed block under ``name``."""
        start_time = time.perf_counter()
        success = True

        try:
            yield
        except Exception:
            success = False
            raise
        finally:
            execution_time = time.perf_counter() - start_time

            if name not in self._metrics:
                self._metrics[name] = PerformanceMetrics(name)
            self._metrics[name].add_execution(execution_time, success)

            if name in self._thresholds and execution_time > self._thresholds[name]:
                self._trigger_warning(name, execution_time)

    def get_summary(self) -> Dict[str, Dict[str, Any]]:
        """Summary of all suites, in seconds, as embedded in JSON reports."""
        summary = {}
        for name, metrics in self._metrics.items():
            summary[name] = {
                "call_count": metrics.call_count,
                "error_count": metrics.error_count,
                "success_rate": metrics.success_rate,
                "average_time_s": metrics.average_time,
                "min_time_s": metrics.min_time if metrics.min_time != float("inf") else 0.0,
                "max_time_s": metrics.max_time,
                "total_time_s": metrics.total_time,
                "budget_s": self._thresholds.get(name),
            }
        return summary

    def _trigger_warning(self, name: str, execution_time: float) -> None:
        logger.warning(
            f"Runtime budget exceeded for {name}: {execution_time:.2f}s "
            f"> {self._thresholds[name]:.2f}s"
        )
        for callback in self._warning_callbacks:
            try:
                callback(name, execution_time)
            except Exception as e:  # noqa: BLE001
                logger.error(f"Error in performance warning callback: {e}")

