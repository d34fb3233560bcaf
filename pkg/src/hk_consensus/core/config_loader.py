# src/hk_consensus/core/config_loader.py
# Fusion de la configuration: constantes < fichier < environnement < options

import configparser
import os
from pathlib import Path
from typing import Any, Callable, Dict, Optional

from pydantic import ValidationError

from hk_consensus.core.constants import ErrorMessages, WORKERS_ENV_VAR
from hk_consensus.core.exceptions import ConfigFileError, UsageError
from hk_consensus.core.utils.logging_config import get_logger
from hk_consensus.core.utils.value_parsing import (
    parse_float_spec, parse_int_list, parse_opinions
)
from hk_consensus.models.cli_config import CliConfig

logger = get_logger()

# Section implicite: le fichier est une liste plate `clé = valeur`
_SECTION = "hk_consensus"

# Synonymes acceptés dans le fichier (noms des options longues)
KEY_ALIASES = {
    'async': 'asynchronous',
    'epsilon': 'eps',
    'workers': 'threads',
}


def _parse_bool(raw: str) -> bool:
    text = str(raw).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"Valeur booléenne invalide: '{raw}'")


def _parse_int(raw: Any) -> int:
    try:
        return int(str(raw).strip())
    except ValueError:
        raise UsageError(f"Entier invalide: '{raw}'")


def _parse_float(raw: Any) -> float:
    try:
        return float(str(raw).strip())
    except ValueError:
        raise UsageError(f"Nombre invalide: '{raw}'")


PARSERS: Dict[str, Callable[[Any], Any]] = {
    'n': parse_int_list,
    'eps': parse_float_spec,
    'opinions': parse_opinions,
    'trials': _parse_int,
    'seed': _parse_int,
    'mode': str,
    'max_steps': _parse_int,
    'convergence_tol': _parse_float,
    'consensus_tol': _parse_float,
    'threads': _parse_int,
    'suite': str,
    'cases': _parse_int,
    'asynchronous': _parse_bool,
    'trace': str,
    'trace_opinions': _parse_bool,
    'output': str,
    'log_level': str,
}


def normalize_key(key: str) -> str:
    """'max-steps' -> 'max_steps', synonymes résolus."""
    key = key.strip().lower().replace("-", "_")
    return KEY_ALIASES.get(key, key)


def read_config_file(path: str | Path) -> Dict[str, str]:
    """
    Lit un fichier `clé = valeur` (commentaires '#').

    Args:
        path: Chemin du fichier

    Returns:
        Dictionnaire clé normalisée -> texte brut

    Raises:
        ConfigFileError: Si le fichier est absent, illisible ou contient une clé inconnue
    """
    target = Path(path)
    if not target.is_file():
        raise ConfigFileError(ErrorMessages.CONFIG_NOT_FOUND.format(target))

    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#",))
    try:
        parser.read_string(f"[{_SECTION}]\n" + target.read_text(encoding="utf-8"))
    except (configparser.Error, OSError, UnicodeDecodeError) as e:
        raise ConfigFileError(ErrorMessages.CONFIG_INVALID.format(e))

    values: Dict[str, str] = {}
    for key, raw in parser.items(_SECTION):
        name = normalize_key(key)
        if name not in PARSERS:
            raise ConfigFileError(ErrorMessages.CONFIG_INVALID.format(f"clé inconnue '{key}'"))
        values[name] = raw
    logger.debug(f"Configuration lue depuis {target}: {sorted(values)}")
    return values


def _parse_all(raw_values: Dict[str, Any]) -> Dict[str, Any]:
    parsed: Dict[str, Any] = {}
    for key, raw in raw_values.items():
        if raw is None:
            continue
        name = normalize_key(key)
        parser = PARSERS.get(name)
        if parser is None:
            raise UsageError(f"Option inconnue: '{key}'")
        parsed[name] = parser(raw) if isinstance(raw, str) else raw
    return parsed


def build_config(
    command: str,
    flags: Dict[str, Any],
    file_values: Optional[Dict[str, str]] = None,
    config_file: Optional[str] = None
) -> CliConfig:
    """
    Construit la configuration effective d'une commande.

    Args:
        command: Sous-commande
        flags: Options passées explicitement (None = absente)
        file_values: Valeurs lues dans le fichier de configuration
        config_file: Chemin du fichier (pour mémoire)

    Returns:
        CliConfig validée

    Raises:
        UsageError: Si une valeur est invalide
    """
    merged: Dict[str, Any] = {}
    merged.update(_parse_all(file_values or {}))

    env_workers = os.getenv(WORKERS_ENV_VAR)
    if env_workers is not None and env_workers.strip():
        merged['threads'] = _parse_int(env_workers)

    merged.update(_parse_all(flags))

    try:
        return CliConfig(command=command, config_file=config_file, **merged)
    except ValidationError as e:
        details = "; ".join(f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors())
        raise UsageError(f"Configuration invalide: {details}")
