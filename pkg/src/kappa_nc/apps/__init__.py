"""Command-line applications."""

from .cli import main

__all__ = ["main"]
