"""Core services: errors, logging, timing and worker control."""

from .errors import (
    ChainComplexDefect,
    ConfigurationError,
    KappaError,
    NumericalError,
)
from .performance_monitor import PerformanceMetrics, PerformanceMonitor
from .workers import parallel_map, worker_count

__all__ = [
    "KappaError",
    "ConfigurationError",
    "NumericalError",
    "ChainComplexDefect",
    "PerformanceMetrics",
    "PerformanceMonitor",
    "parallel_map",
    "worker_count",
]
