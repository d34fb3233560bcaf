# src/hk_consensus/core/verification/runner.py
# Exécution d'une suite de propriétés: cas répartis par blocs, fusion dans l'ordre des cas

from __future__ import annotations

import time
from functools import partial
from typing import Any, Dict, List, Sequence, Tuple

from hk_consensus.core.constants import (
    ALL_SUITES, MAX_REPORTED_VIOLATIONS, ErrorMessages, SuccessMessages, SuiteNames
)
from hk_consensus.core.exceptions import UnknownSuiteError, UsageError
from hk_consensus.core.params import ArithmeticMode
from hk_consensus.core.utils.logging_config import get_logger, get_verification_logger
from hk_consensus.core.utils.parallel import chunk_ranges, ordered_map
from hk_consensus.core.utils.seeding import rng_for, trial_seed
from hk_consensus.core.verification.suites import FORCED_MODES, SUITES
from hk_consensus.models.verification_report import VerificationReport

logger = get_logger()
verification_logger = get_verification_logger()

# Nombre de cas par tâche du pool
CASES_PER_SHARD = 250

ShardResult = Tuple[int, int, List[Dict[str, Any]]]


def expand_suite_names(names: Sequence[str] | str) -> List[str]:
    """
    Développe 'all' et valide les noms de suites.

    Raises:
        UnknownSuiteError: Si un nom est inconnu
    """
    if isinstance(names, str):
        names = [part.strip() for part in names.split(",") if part.strip()]
    expanded: List[str] = []
    for name in names:
        if name == SuiteNames.ALL:
            expanded.extend(ALL_SUITES)
        elif name in SUITES:
            expanded.append(name)
        else:
            raise UnknownSuiteError(ErrorMessages.UNKNOWN_SUITE.format(name, ", ".join(SUITES)))
    if not expanded:
        raise UnknownSuiteError(ErrorMessages.UNKNOWN_SUITE.format("", ", ".join(SUITES)))
    return expanded


def _run_shard(name: str, seed: int, mode: ArithmeticMode, bounds: Tuple[int, int]) -> ShardResult:
    """Exécute les cas [début, fin) d'une suite; chaque cas a son propre générateur."""
    check = SUITES[name]
    checks = 0
    count = 0
    kept: List[Dict[str, Any]] = []
    for case_index in range(*bounds):
        outcome = check(rng_for(trial_seed(seed, case_index)), mode)
        checks += outcome.checks
        for violation in outcome.violations:
            count += 1
            if len(kept) < MAX_REPORTED_VIOLATIONS:
                kept.append({'case': case_index, **violation})
    return checks, count, kept


def run_suite(
    name: str,
    cases: int,
    seed: int,
    mode: ArithmeticMode = ArithmeticMode.FLOAT,
    workers: int = 1
) -> VerificationReport:
    """
    Génère `cases` instances à partir de la graine et vérifie la propriété de la suite.

    Le rapport ne dépend que de (name, cases, seed, mode), pas du nombre de workers.

    Args:
        name: Identifiant de la suite
        cases: Nombre d'instances (>= 0)
        seed: Graine 64 bits
        mode: Mode arithmétique des instances
        workers: Nombre de workers

    Returns:
        VerificationReport

    Raises:
        UnknownSuiteError: Si la suite n'existe pas
        UsageError: Si cases est négatif
    """
    if name not in SUITES:
        raise UnknownSuiteError(ErrorMessages.UNKNOWN_SUITE.format(name, ", ".join(SUITES)))
    if cases < 0:
        raise UsageError(ErrorMessages.NEGATIVE_CASES)
    mode = FORCED_MODES.get(name, ArithmeticMode.parse(mode))

    logger.info(f"Suite '{name}': {cases} cas, graine {seed}, mode {mode.value}")
    started = time.perf_counter()
    shards = ordered_map(partial(_run_shard, name, seed, mode), chunk_ranges(cases, CASES_PER_SHARD), workers)

    checks = 0
    count = 0
    violations: List[Dict[str, Any]] = []
    for shard_checks, shard_count, shard_kept in shards:
        checks += shard_checks
        count += shard_count
        violations.extend(shard_kept[:MAX_REPORTED_VIOLATIONS - len(violations)])
    elapsed_ms = (time.perf_counter() - started) * 1000

    report = VerificationReport(
        suite=name,
        mode=mode.value,
        cases=cases,
        checks=checks,
        violation_count=count,
        violations=violations,
        seed=seed,
        elapsed_ms=round(elapsed_ms, 3),
    )
    if report.passed:
        logger.info(f"{SuccessMessages.SUITE_PASSED}: '{name}' ({checks} vérifications, {elapsed_ms:.0f} ms)")
    else:
        verification_logger.warning(f"Suite '{name}': {ErrorMessages.VERIFICATION_FAILED.format(count)}")
        for violation in violations:
            verification_logger.warning(f"Contre-exemple '{name}': {violation}")
    return report


def run_suites(
    names: Sequence[str] | str,
    cases: int,
    seed: int,
    mode: ArithmeticMode = ArithmeticMode.FLOAT,
    workers: int = 1
) -> List[VerificationReport]:
    """Exécute plusieurs suites ('all' compris) dans l'ordre donné."""
    return [run_suite(name, cases, seed, mode, workers) for name in expand_suite_names(names)]
