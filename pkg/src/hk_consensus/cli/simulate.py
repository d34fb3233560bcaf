# src/hk_consensus/cli/simulate.py
# Sous-commande simulate: une trajectoire, résumé et trace JSONL

import argparse
from fractions import Fraction

from hk_consensus.core.constants import ErrorMessages, ExitCodes, SuccessMessages
from hk_consensus.core.dynamics import TrajectoryResult, run, run_asynchronous
from hk_consensus.core.exceptions import UsageError
from hk_consensus.core.monte_carlo import sample_initial
from hk_consensus.core.params import ArithmeticMode, ModelParams, to_exact
from hk_consensus.core.profile import OpinionProfile
from hk_consensus.core.utils.logging_config import get_logger
from hk_consensus.core.utils.output_writer import build_metadata, write_jsonl
from hk_consensus.core.utils.value_parsing import single_value
from hk_consensus.models.cli_config import CliConfig

logger = get_logger()

COMMAND = "simulate"


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(COMMAND, parents=[common], help="Simule une trajectoire")
    parser.add_argument("--n", default=None, help="Nombre d'agents (profil tiré avec --seed)")
    parser.add_argument("--opinions", default=None, help="Profil initial explicite, ex. 0.0,0.4,0.8")
    parser.add_argument("--eps", default=None, help="Seuil de confiance")
    parser.add_argument("--seed", default=None, help="Graine du profil tiré et de la variante asynchrone")
    parser.add_argument("--max-steps", dest="max_steps", default=None)
    parser.add_argument("--convergence-tol", dest="convergence_tol", default=None)
    parser.add_argument("--consensus-tol", dest="consensus_tol", default=None)
    parser.add_argument("--async", dest="asynchronous", action="store_true", default=None,
                        help="Variante asynchrone (un agent tiré par pas)")
    parser.add_argument("--trace", default=None, help="Fichier JSONL de trace (une ligne par pas)")
    parser.add_argument("--trace-opinions", dest="trace_opinions", action="store_true", default=None,
                        help="Inclut le profil complet dans chaque ligne de trace")


def initial_profile(config: CliConfig, mode: ArithmeticMode) -> OpinionProfile:
    """
    Profil initial: --opinions s'il est fourni, sinon n tirages uniformes avec --seed.

    Raises:
        UsageError: Si --n contredit --opinions ou si ni l'un ni l'autre n'est fourni
    """
    if config.opinions:
        if config.n and config.n[0] != len(config.opinions):
            raise UsageError(ErrorMessages.N_OPINIONS_MISMATCH.format(config.n[0], len(config.opinions)))
        if mode is ArithmeticMode.RATIONAL:
            return OpinionProfile.from_values([to_exact(v) for v in config.opinions], mode)
        return OpinionProfile.from_values([float(Fraction(v)) for v in config.opinions], mode)
    return sample_initial(single_value(config.n, "n"), config.seed, mode)


def format_value(value) -> str:
    return str(value) if isinstance(value, Fraction) else repr(float(value))


def print_summary(result: TrajectoryResult) -> None:
    """Résumé lisible sur la sortie standard."""
    print(f"status: {result.status.value}")
    print(f"consensus: {'true' if result.consensus else 'false'}")
    print(f"converged_at: {result.converged_at if result.converged_at is not None else 'none'}")
    print(f"steps: {result.steps_taken}")
    print(f"clusters: {len(result.clusters)}")
    for k, cluster in enumerate(result.clusters):
        print(f"  cluster {k}: value={format_value(cluster.value)} size={cluster.size} "
              f"spread={format_value(cluster.spread)}")


def execute(config: CliConfig) -> int:
    """
    Exécute une trajectoire et écrit la trace si demandée.

    Raises:
        UsageError: Arguments manquants ou incohérents
        NonConvergenceError: Pas de point fixe en max_steps pas (code 2)
    """
    mode = ArithmeticMode.parse(config.mode)
    params = ModelParams(
        epsilon=single_value(config.eps, "eps"),
        mode=mode,
        convergence_tol=config.convergence_tol,
        consensus_tol=config.consensus_tol,
        max_steps=config.max_steps,
        trace=config.trace is not None,
    )
    initial = initial_profile(config, mode)
    logger.info(f"Simulation n={initial.n} epsilon={params.epsilon} mode={mode.value}"
                f"{' (asynchrone)' if config.asynchronous else ''}")

    if config.asynchronous:
        result = run_asynchronous(initial, params, config.seed)
    else:
        result = run(initial, params)

    print_summary(result)
    if config.trace is not None and result.trace is not None:
        records = result.trace
        if not config.trace_opinions:
            records = [record.model_copy(update={'opinions': None}) for record in records]
        write_jsonl(config.trace, build_metadata(COMMAND, config.metadata_view(), config.seed), records)

    result.require_converged()
    logger.info(SuccessMessages.CONSENSUS_REACHED if result.consensus else SuccessMessages.NO_CONSENSUS)
    return ExitCodes.OK
