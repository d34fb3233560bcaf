# src/hk_consensus/cli/verify.py
# Sous-commande verify: suites de propriétés et rapport JSON

import argparse

from hk_consensus.core.constants import ErrorMessages, ExitCodes
from hk_consensus.core.exceptions import VerificationFailedError
from hk_consensus.core.params import ArithmeticMode
from hk_consensus.core.utils.output_writer import build_metadata, write_json
from hk_consensus.core.utils.parallel import resolve_workers
from hk_consensus.core.verification import expand_suite_names, run_suites
from hk_consensus.models.cli_config import CliConfig

COMMAND = "verify"


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(COMMAND, parents=[common], help="Vérifie les propriétés du modèle")
    parser.add_argument("--suite", default=None, help="Nom de suite, liste séparée par des virgules, ou 'all'")
    parser.add_argument("--cases", default=None, help="Nombre d'instances aléatoires par suite")
    parser.add_argument("--seed", default=None)
    parser.add_argument("--output", default=None, help="Fichier JSON du rapport (sortie standard par défaut)")


def execute(config: CliConfig) -> int:
    """
    Exécute les suites demandées.

    Raises:
        UnknownSuiteError: Suite inconnue (code 1)
        VerificationFailedError: Au moins un contre-exemple (code 3)
    """
    names = expand_suite_names(config.suite)
    reports = run_suites(
        names, config.cases, config.seed, ArithmeticMode.parse(config.mode), resolve_workers(config.threads)
    )
    passed = all(report.passed for report in reports)
    payload = {
        'metadata': build_metadata(COMMAND, config.metadata_view(), config.seed),
        'passed': passed,
        'reports': [report.model_dump() for report in reports],
    }
    text = write_json(config.output, payload)
    if not config.output:
        print(text, end="")

    if not passed:
        total = sum(report.violation_count for report in reports)
        raise VerificationFailedError(reports, ErrorMessages.VERIFICATION_FAILED.format(total))
    return ExitCodes.OK
