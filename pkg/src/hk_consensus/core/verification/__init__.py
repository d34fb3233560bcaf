# src/hk_consensus/core/verification/__init__.py
# Décomposition par appariement, borne de déconnexion et suites de propriétés

from hk_consensus.core.verification.bounds import disconnect_bound, disconnect_probability
from hk_consensus.core.verification.matching import (
    MatchingDecomposition, MatchingTerm, matching_decomposition
)
from hk_consensus.core.verification.runner import expand_suite_names, run_suite, run_suites

__all__ = [
    "disconnect_bound",
    "disconnect_probability",
    "MatchingDecomposition",
    "MatchingTerm",
    "matching_decomposition",
    "expand_suite_names",
    "run_suite",
    "run_suites",
]
