"""Optimality checks, the brute-force oracle and sampling validation."""

from scalebb.verify.conditions import CONDITION_RULES, check_optimality
from scalebb.verify.conjecture import conjecture_test, irreducible_instance
from scalebb.verify.oracle import oracle_min
from scalebb.verify.underestimation import underestimation_check

__all__ = [
    "CONDITION_RULES",
    "check_optimality",
    "conjecture_test",
    "irreducible_instance",
    "oracle_min",
    "underestimation_check",
]
