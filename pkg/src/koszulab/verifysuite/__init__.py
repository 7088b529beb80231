"""Theorem-by-theorem verification suites over the standard corpus."""

from .audit import atiyah_bott_series, bound_audit, sym_dimension_series
from .report import EXPECTED_FAILURE, FAIL, PASS, CaseResult, VerificationReport
from .suites import SuiteConfig, UnknownSuite, run_all, run_suite, suite_names

__all__ = [
    "CaseResult", "EXPECTED_FAILURE", "FAIL", "PASS", "SuiteConfig", "UnknownSuite", "VerificationReport",
    "atiyah_bott_series", "bound_audit", "run_all", "run_suite", "suite_names", "sym_dimension_series",
]
