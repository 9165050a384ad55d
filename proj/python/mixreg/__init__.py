"""Contaminated-regression estimation: simulation, contrast minimization and
plug-in error-law estimates, backed by the C++ core."""

try:
    from ._mixreg import (
        contrast,
        diagnose,
        error_law_estimates,
        estimate,
        population_contrast,
        replicate,
        simulate,
        surface,
    )
except ImportError:  # in-tree test runs: extension on PYTHONPATH, not installed
    from _mixreg import (
        contrast,
        diagnose,
        error_law_estimates,
        estimate,
        population_contrast,
        replicate,
        simulate,
        surface,
    )

__all__ = [
    "contrast",
    "diagnose",
    "error_law_estimates",
    "estimate",
    "population_contrast",
    "replicate",
    "simulate",
    "surface",
]
