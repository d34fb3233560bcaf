# src/hk_consensus/core/utils/parallel.py
# Pool de workers joblib: les résultats reviennent toujours dans l'ordre des tâches

import os
from typing import Callable, List, Optional, Sequence, Tuple, TypeVar

from joblib import Parallel, delayed

from hk_consensus.core.constants import WORKERS_ENV_VAR
from hk_consensus.core.exceptions import UsageError
from hk_consensus.core.utils.logging_config import get_logger

logger = get_logger()

T = TypeVar("T")
R = TypeVar("R")


def resolve_workers(threads: Optional[int] = None) -> int:
    """
    Nombre de workers: option explicite, sinon HK_CONSENSUS_WORKERS, sinon nombre de cœurs.

    Raises:
        UsageError: Si la valeur est invalide
    """
    if threads is None:
        raw = os.getenv(WORKERS_ENV_VAR)
        if raw is None or not raw.strip():
            return os.cpu_count() or 1
        try:
            threads = int(raw)
        except ValueError:
            raise UsageError(f"{WORKERS_ENV_VAR} invalide: '{raw}'")
    if threads < 1:
        raise UsageError(f"Le nombre de workers doit être >= 1 (reçu: {threads})")
    return threads


def chunk_ranges(total: int, size: int) -> List[Tuple[int, int]]:
    """Découpe [0, total) en plages contiguës [début, fin) de taille size au plus."""
    return [(start, min(start + size, total)) for start in range(0, total, size)]


def ordered_map(func: Callable[[T], R], items: Sequence[T], workers: int = 1) -> List[R]:
    """
    Applique func à chaque élément, éventuellement en parallèle.

    Le résultat suit l'ordre de items quel que soit le nombre de workers.
    """
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    logger.debug(f"Répartition de {len(items)} tâches sur {workers} workers")
    return Parallel(n_jobs=min(workers, len(items)))(delayed(func)(item) for item in items)
