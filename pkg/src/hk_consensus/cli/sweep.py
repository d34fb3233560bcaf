# src/hk_consensus/cli/sweep.py
# Sous-commande sweep: grille n x epsilon vers CSV

import argparse

import pandas as pd

from hk_consensus.core.constants import ErrorMessages, ExitCodes, SWEEP_CSV_HEADER
from hk_consensus.core.exceptions import UsageError
from hk_consensus.core.monte_carlo import sweep
from hk_consensus.core.params import ArithmeticMode, ModelParams
from hk_consensus.core.utils.output_writer import build_metadata, render_csv, write_csv
from hk_consensus.core.utils.parallel import resolve_workers
from hk_consensus.models.cli_config import CliConfig

COMMAND = "sweep"


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(COMMAND, parents=[common], help="Estime P(consensus) sur une grille")
    parser.add_argument("--n", default=None, help="Liste de tailles, ex. 10,100,1000")
    parser.add_argument("--eps", default=None, help="Liste 0.1,0.5 ou plage start:stop:step")
    parser.add_argument("--trials", default=None)
    parser.add_argument("--seed", default=None)
    parser.add_argument("--max-steps", dest="max_steps", default=None)
    parser.add_argument("--convergence-tol", dest="convergence_tol", default=None)
    parser.add_argument("--consensus-tol", dest="consensus_tol", default=None)
    parser.add_argument("--output", default=None, help="Fichier CSV (sortie standard par défaut)")


def execute(config: CliConfig) -> int:
    """
    Une ligne par cellule, triées par n puis epsilon croissants.

    Raises:
        UsageError: Grille vide ou invalide, fichier non inscriptible
        DomainError: epsilon hors domaine
    """
    if not config.n:
        raise UsageError(ErrorMessages.MISSING_ARGUMENT.format("--n"))
    if not config.eps:
        raise UsageError(ErrorMessages.MISSING_ARGUMENT.format("--eps"))
    if min(config.n) < 1:
        raise UsageError(ErrorMessages.N_INVALID.format(min(config.n)))

    params = ModelParams(
        epsilon=config.eps[0],
        mode=ArithmeticMode.parse(config.mode),
        convergence_tol=config.convergence_tol,
        consensus_tol=config.consensus_tol,
        max_steps=config.max_steps,
    )
    records = sweep(config.n, config.eps, config.trials, config.seed, params, resolve_workers(config.threads))

    # master_seed reste la graine fournie; la graine dérivée de chaque cellule va dans cell_seed
    rows = [{**record.model_dump(), 'master_seed': config.seed, 'cell_seed': record.master_seed} for record in records]
    frame = pd.DataFrame(rows, columns=SWEEP_CSV_HEADER)
    if config.output:
        write_csv(config.output, frame, build_metadata(COMMAND, config.metadata_view(), config.seed))
    else:
        print(render_csv(frame), end="")
    return ExitCodes.OK
