"""kappa-nc - kappa-Minkowski Noncommutative Geometry Toolkit."""

__version__ = "0.1.0"
__author__ = "kappa-nc Team"
__description__ = "Star products, spectral zeta functions and twisted homology for kappa-Minkowski"
