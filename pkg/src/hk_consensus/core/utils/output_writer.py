# src/hk_consensus/core/utils/output_writer.py
# Écriture des sorties (CSV + métadonnées, traces JSONL, rapports JSON)

import json
from pathlib import Path
from typing import Any, Dict, Iterable, Optional

import pandas as pd
from pydantic import BaseModel

from hk_consensus.core.constants import (
    APP_NAME, APP_VERSION, CSV_LINE_TERMINATOR, ErrorMessages, GENERATOR_NAME, META_SUFFIX
)
from hk_consensus.core.exceptions import OutputWriteError
from hk_consensus.core.utils.logging_config import get_logger
from hk_consensus.core.utils.seeding import seed_mixing_metadata

logger = get_logger()


def build_metadata(command: str, config: Dict[str, Any], master_seed: int) -> Dict[str, Any]:
    """
    Métadonnées embarquées dans chaque sortie.

    Args:
        command: Sous-commande exécutée
        config: Configuration effective (sans les réglages qui n'affectent pas les résultats)
        master_seed: Graine maîtresse

    Returns:
        Dictionnaire sérialisable en JSON
    """
    return {
        'tool': APP_NAME,
        'version': APP_VERSION,
        'command': command,
        'config': config,
        'master_seed': master_seed,
        'generator': GENERATOR_NAME,
        'seed_mixing': seed_mixing_metadata(),
    }


def to_json(payload: Any) -> str:
    """JSON canonique (clés triées) pour des sorties identiques octet par octet."""
    return json.dumps(payload, sort_keys=True, ensure_ascii=False)


def render_csv(frame: pd.DataFrame) -> str:
    """CSV RFC 4180: virgules, point décimal, fins de ligne CRLF, valeurs absentes vides."""
    return frame.to_csv(index=False, lineterminator=CSV_LINE_TERMINATOR, na_rep="")


def write_text(path: str | Path, text: str) -> Path:
    """
    Écrit un texte tel quel (sans traduction des fins de ligne).

    Raises:
        OutputWriteError: Si le fichier ne peut pas être écrit
    """
    target = Path(path)
    try:
        with open(target, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    except OSError as e:
        logger.error(f"Écriture impossible de {target}: {e}")
        raise OutputWriteError(ErrorMessages.OUTPUT_UNWRITABLE.format(target))
    return target


def metadata_path(path: str | Path) -> Path:
    """Chemin du fichier de métadonnées associé à un CSV."""
    return Path(f"{path}{META_SUFFIX}")


def write_csv(path: str | Path, frame: pd.DataFrame, metadata: Dict[str, Any]) -> Path:
    """
    Écrit un CSV et son fichier de métadonnées '<path>.meta.json'.

    Returns:
        Chemin du CSV écrit
    """
    target = write_text(path, render_csv(frame))
    write_text(metadata_path(target), json.dumps(metadata, sort_keys=True, indent=2, ensure_ascii=False) + "\n")
    logger.info(f"CSV écrit: {target} ({len(frame)} lignes)")
    return target


def render_jsonl(metadata: Dict[str, Any], records: Iterable[BaseModel]) -> str:
    """Une ligne de métadonnées puis un objet JSON par enregistrement."""
    lines = [to_json({'metadata': metadata})]
    lines.extend(to_json(record.model_dump(exclude_none=True)) for record in records)
    return "\n".join(lines) + "\n"


def write_jsonl(path: str | Path, metadata: Dict[str, Any], records: Iterable[BaseModel]) -> Path:
    target = write_text(path, render_jsonl(metadata, records))
    logger.info(f"Trace écrite: {target}")
    return target


def write_json(path: Optional[str | Path], payload: Dict[str, Any]) -> str:
    """
    Sérialise un document JSON et l'écrit si un chemin est donné.

    Returns:
        Texte JSON produit
    """
    text = json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if path is not None:
        write_text(path, text)
        logger.info(f"Rapport écrit: {path}")
    return text
