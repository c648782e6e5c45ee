"""Kendall's tau-b in O(n log n), with exact and asymptotic significance tests."""

from fasttau.core import (
    PairedSample,
    TauResult,
    TieCounts,
    kendall_cor,
    kendall_tau,
    validate_sample,
)
from fasttau.inference import (
    Alternative,
    Method,
    TestResult,
    exact_null_cdf,
    kendall_cor_test,
    kendall_test,
    tau_normal_statistic,
)

__version__ = "0.1.0"

__all__ = [
    "Alternative",
    "Method",
    "PairedSample",
    "TauResult",
    "TestResult",
    "TieCounts",
    "exact_null_cdf",
    "kendall_cor",
    "kendall_cor_test",
    "kendall_tau",
    "kendall_test",
    "tau_normal_statistic",
    "validate_sample",
]
