# src/hk_consensus/cli/bound.py
# Sous-commande bound: borne de déconnexion contre fréquence empirique

import argparse

import pandas as pd

from hk_consensus.core.constants import (
    BOUND_CSV_HEADER, BOUND_SLACK_HALF_WIDTHS, ErrorMessages, ExitCodes, SuccessMessages
)
from hk_consensus.core.exceptions import UsageError, VerificationFailedError
from hk_consensus.core.monte_carlo import TrialPlan, estimate_disconnect_probability
from hk_consensus.core.params import ArithmeticMode, ModelParams
from hk_consensus.core.utils.logging_config import get_verification_logger
from hk_consensus.core.utils.output_writer import build_metadata, write_csv
from hk_consensus.core.utils.parallel import resolve_workers
from hk_consensus.core.utils.value_parsing import single_value
from hk_consensus.core.verification import disconnect_bound, disconnect_probability
from hk_consensus.models.cli_config import CliConfig

verification_logger = get_verification_logger()

COMMAND = "bound"


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(COMMAND, parents=[common], help="Compare la borne de déconnexion à la simulation")
    parser.add_argument("--n", default=None)
    parser.add_argument("--eps", default=None)
    parser.add_argument("--trials", default=None)
    parser.add_argument("--seed", default=None)
    parser.add_argument("--output", default=None, help="Fichier CSV d'une ligne")


def execute(config: CliConfig) -> int:
    """
    Affiche la borne, l'estimation empirique avec son intervalle et le verdict.

    PASS si p_hat <= borne + 4 demi-largeurs d'intervalle.

    Raises:
        DomainError: (n, epsilon) hors du domaine de la borne (code 1)
        VerificationFailedError: Verdict FAIL (code 3)
    """
    if not config.eps:
        raise UsageError(ErrorMessages.MISSING_ARGUMENT.format("--eps"))
    epsilon = single_value(config.eps, "eps")
    n = single_value(config.n, "n")
    bound_value = float(disconnect_bound(n, epsilon))
    exact_value = float(disconnect_probability(n, epsilon))

    params = ModelParams(epsilon=epsilon, mode=ArithmeticMode.parse(config.mode))
    plan = TrialPlan.build(n, epsilon, config.trials, config.seed, params)
    record = estimate_disconnect_probability(plan, resolve_workers(config.threads))

    slack = BOUND_SLACK_HALF_WIDTHS * record.half_width
    passed = record.p_hat <= bound_value + slack
    verdict = SuccessMessages.BOUND_PASS if passed else SuccessMessages.BOUND_FAIL

    print(f"bound: {bound_value:.10g}")
    print(f"exact: {exact_value:.10g}")
    print(f"empirical: {record.p_hat!r} [{record.ci_low!r}, {record.ci_high!r}] ({record.successes}/{record.trials})")
    print(f"slack: {slack!r}")
    print(f"verdict: {verdict}")

    if config.output:
        row = {
            'n': n, 'epsilon': epsilon, 'trials': record.trials, 'disconnected': record.successes,
            'p_hat': record.p_hat, 'ci_low': record.ci_low, 'ci_high': record.ci_high,
            'bound': bound_value, 'exact': exact_value, 'slack': slack, 'verdict': verdict, 'master_seed': config.seed,
        }
        frame = pd.DataFrame([row], columns=BOUND_CSV_HEADER)
        write_csv(config.output, frame, build_metadata(COMMAND, config.metadata_view(), config.seed))

    if not passed:
        verification_logger.warning(f"Borne dépassée: n={n} epsilon={epsilon} p_hat={record.p_hat} borne={bound_value}")
        raise VerificationFailedError([record], f"Borne dépassée ({record.p_hat} > {bound_value} + {slack})")
    return ExitCodes.OK
