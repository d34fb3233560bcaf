# src/hk_consensus/cli/__init__.py
# Parseur principal de la ligne de commande

import argparse
from typing import Callable, Dict

from hk_consensus.core.constants import APP_DESCRIPTION, APP_NAME, APP_VERSION
from hk_consensus.core.exceptions import UsageError
from hk_consensus.models.cli_config import CliConfig

from hk_consensus.cli import bound, simulate, sweep, verify


class CliArgumentParser(argparse.ArgumentParser):
    """ArgumentParser qui lève UsageError au lieu de quitter le processus."""

    def error(self, message: str):
        raise UsageError(message)


def _common_options() -> argparse.ArgumentParser:
    """Options partagées par toutes les sous-commandes."""
    common = CliArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="Fichier de configuration `clé = valeur`")
    common.add_argument("--log-level", dest="log_level", default=None, help="DEBUG, INFO, WARNING, ERROR")
    common.add_argument("--threads", default=None, help="Nombre de workers (sans effet sur les résultats)")
    common.add_argument("--mode", default=None, help="float64 ou exact-rational")
    return common


def build_parser() -> CliArgumentParser:
    """
    Construit le parseur avec les sous-commandes simulate, sweep, verify et bound.

    Toutes les options valent None par défaut: seules les options passées
    explicitement écrasent le fichier de configuration.
    """
    parser = CliArgumentParser(prog=APP_NAME.replace("_", "-"), description=APP_DESCRIPTION)
    parser.add_argument("--version", action="version", version=f"%(prog)s {APP_VERSION}")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=CliArgumentParser)

    common = _common_options()
    for module in (simulate, sweep, verify, bound):
        module.register(subparsers, common)
    return parser


# Sous-commande -> exécution (retourne le code de sortie)
COMMANDS: Dict[str, Callable[[CliConfig], int]] = {
    simulate.COMMAND: simulate.execute,
    sweep.COMMAND: sweep.execute,
    verify.COMMAND: verify.execute,
    bound.COMMAND: bound.execute,
}

__all__ = ["build_parser", "COMMANDS", "CliArgumentParser"]
