# src/hk_consensus/core/utils/intervals.py
# Intervalle de confiance de Wilson pour une proportion binomiale

from typing import Tuple

from scipy.stats import binomtest

from hk_consensus.core.constants import CI_METHOD, CONFIDENCE_LEVEL


def wilson_interval(successes: int, trials: int, level: float = CONFIDENCE_LEVEL) -> Tuple[float, float]:
    """
    Intervalle de score de Wilson.

    Bornes forcées à 0 (aucun succès) et à 1 (que des succès), puis
    élargies au besoin pour contenir la proportion observée.

    Args:
        successes: Nombre de succès
        trials: Nombre d'essais (>= 1)
        level: Niveau de confiance

    Returns:
        Tuple (ci_low, ci_high)
    """
    p_hat = successes / trials
    interval = binomtest(successes, trials).proportion_ci(confidence_level=level, method=CI_METHOD)
    low = 0.0 if successes == 0 else min(max(float(interval.low), 0.0), p_hat)
    high = 1.0 if successes == trials else max(min(float(interval.high), 1.0), p_hat)
    return low, high
