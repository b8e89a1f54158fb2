#!/usr/bin/env python3
"""
kappa-nc - Main entry point

Runs the same click group as the installed ``kappa-nc`` console script.
Usage:
  python main.py zeta [options]      # Spectral zeta scan, poles, residues
  python main.py star [options]      # Star-product verification suites
  python main.py homology [options]  # Twisted homology of the enveloping algebra
  python main.py specdim [options]   # Spectral dimension scan
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent / "src"))

from kappa_nc.apps.cli import main  # noqa: E402

if __name__ == "__main__":
    main()
