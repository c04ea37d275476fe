"""
Verification suites for the space-form toolkit

Each suite draws seeded random samples, checks one family of closed forms or
inequalities, and returns a SuiteResult with a per-sample table.
"""

from verification.suites import SUITE_DEFAULTS, SUITES, run_suites

__all__ = ["SUITE_DEFAULTS", "SUITES", "run_suites"]
