# src/hk_consensus/main.py
# Point d'entrée de la ligne de commande: configuration, logging et codes de sortie

import sys
from typing import List, Optional

from hk_consensus.cli import COMMANDS, build_parser
from hk_consensus.core.config_loader import build_config, read_config_file
from hk_consensus.core.constants import DEFAULT_LOG_LEVEL, ExitCodes
from hk_consensus.core.exceptions import (
    DomainError, NonConvergenceError, UsageError, VerificationFailedError
)
from hk_consensus.core.utils.logging_config import get_logger, setup_logging

logger = get_logger()

# Options globales qui ne font pas partie de la configuration fusionnée
_RESERVED = {"command", "config"}


def run(argv: Optional[List[str]] = None) -> int:
    """
    Exécute une sous-commande et retourne le code de sortie.

    0 succès, 1 erreur d'utilisation ou de domaine, 2 non-convergence,
    3 échec de vérification.

    Args:
        argv: Arguments (sys.argv[1:] par défaut)

    Returns:
        Code de sortie
    """
    setup_logging(DEFAULT_LOG_LEVEL)
    try:
        args = build_parser().parse_args(argv)
        flags = {key: value for key, value in vars(args).items() if key not in _RESERVED}
        file_values = read_config_file(args.config) if args.config else None
        config = build_config(args.command, flags, file_values, args.config)
        setup_logging(config.log_level)
        logger.debug(f"Configuration effective: {config.model_dump()}")
        return COMMANDS[config.command](config)

    except (UsageError, DomainError) as e:
        logger.error(e.message)
        return ExitCodes.USAGE
    except NonConvergenceError as e:
        logger.error(e.message)
        return ExitCodes.NON_CONVERGENCE
    except VerificationFailedError as e:
        logger.error(e.message)
        return ExitCodes.VERIFICATION_FAILED
    except SystemExit as e:
        # --help et --version
        return int(e.code or 0)
    except Exception as e:
        logger.error(f"Erreur inattendue: {e}", exc_info=True)
        return ExitCodes.USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
