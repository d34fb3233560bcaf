# src/hk_consensus/core/monte_carlo.py
# Estimations de Monte Carlo reproductibles (consensus, déconnexion initiale, propriété H)

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from hk_consensus.core.constants import BATCH_MAX_N, ErrorMessages, GENERATOR_NAME, TRIALS_PER_CHUNK
from hk_consensus.core.dynamics import run, run_batch
from hk_consensus.core.exceptions import DomainError
from hk_consensus.core.graph import h_statement, is_connected
from hk_consensus.core.params import ArithmeticMode, ModelParams, Scalar
from hk_consensus.core.profile import OpinionProfile, as_exact_array
from hk_consensus.core.utils.intervals import wilson_interval
from hk_consensus.core.utils.logging_config import get_logger
from hk_consensus.core.utils.parallel import chunk_ranges, ordered_map
from hk_consensus.core.utils.seeding import cell_seed, rng_for, trial_seed
from hk_consensus.core.verification.bounds import disconnect_bound
from hk_consensus.models.estimate_record import EstimateRecord

logger = get_logger()

# Issues d'un essai de consensus
CONSENSUS = 1
NO_CONSENSUS = 0
NOT_CONVERGED = -1


@dataclass(frozen=True)
class TrialPlan:
    """
    Plan d'une cellule de Monte Carlo.

    La graine de l'essai k est trial_seed(master_seed, k); params.epsilon est
    aligné sur epsilon.
    """
    n: int
    epsilon: Scalar
    trials: int
    master_seed: int
    params: ModelParams

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DomainError(ErrorMessages.N_INVALID.format(self.n))
        if self.trials < 1:
            raise DomainError(ErrorMessages.TRIALS_INVALID.format(self.trials))
        object.__setattr__(self, "params", self.params.with_epsilon(self.epsilon))

    @classmethod
    def build(
        cls,
        n: int,
        epsilon: Scalar,
        trials: int,
        master_seed: int,
        params: Optional[ModelParams] = None
    ) -> TrialPlan:
        """Construit un plan avec des paramètres par défaut si params est absent."""
        base = params.with_epsilon(epsilon) if params is not None else ModelParams(epsilon)
        return cls(n=n, epsilon=epsilon, trials=trials, master_seed=master_seed, params=base)

    def seed_of(self, trial_index: int) -> int:
        return trial_seed(self.master_seed, trial_index)


def _draws(n: int, seed: int) -> np.ndarray:
    return np.sort(rng_for(seed).random(n))


def sample_initial(n: int, seed: int, mode: ArithmeticMode = ArithmeticMode.FLOAT) -> OpinionProfile:
    """
    Tire n opinions uniformes sur [0,1] (générateur PCG64) et les trie.

    En mode rationnel, chaque tirage est converti exactement en Fraction.

    Raises:
        DomainError: Si n < 1
    """
    if n < 1:
        raise DomainError(ErrorMessages.N_INVALID.format(n))
    draws = _draws(n, seed)
    if ArithmeticMode.parse(mode) is ArithmeticMode.RATIONAL:
        return OpinionProfile(as_exact_array([Fraction(v) for v in draws.tolist()]))
    return OpinionProfile(draws)


# ============================================================================
# ESSAIS (fonctions de module: transmises aux workers)
# ============================================================================

def _batchable(plan: TrialPlan) -> bool:
    """Essais simulés en lot: flottants synchrones, sans trace, profils de taille modeste."""
    params = plan.params
    return not params.is_exact and not params.trace and plan.n <= BATCH_MAX_N


def _consensus_batch(plan: TrialPlan, bounds: Tuple[int, int]) -> List[Tuple[int, Optional[int]]]:
    initial = np.stack([_draws(plan.n, plan.seed_of(k)) for k in range(*bounds)])
    converged_at, consensus = run_batch(initial, plan.params)
    return [
        (NOT_CONVERGED, None) if at < 0 else (CONSENSUS if agreed else NO_CONSENSUS, at)
        for at, agreed in zip(converged_at.tolist(), consensus.tolist())
    ]


def _consensus_trials(plan: TrialPlan, bounds: Tuple[int, int]) -> List[Tuple[int, Optional[int]]]:
    if _batchable(plan):
        return _consensus_batch(plan, bounds)
    outcomes: List[Tuple[int, Optional[int]]] = []
    for k in range(*bounds):
        initial = sample_initial(plan.n, plan.seed_of(k), plan.params.mode)
        result = run(initial, plan.params)
        if not result.converged:
            outcomes.append((NOT_CONVERGED, None))
            continue
        if result.connectivity_history is not None:
            history = result.connectivity_history
            if result.consensus and not all(history):
                logger.warning(f"Essai {k}: consensus malgré un graphe déconnecté (n={plan.n}, epsilon={plan.epsilon})")
            if not history[0] and result.consensus:
                logger.warning(f"Essai {k}: consensus depuis un graphe initial déconnecté")
        outcomes.append((CONSENSUS if result.consensus else NO_CONSENSUS, result.converged_at))
    return outcomes


def _disconnected_trials(plan: TrialPlan, bounds: Tuple[int, int]) -> List[bool]:
    return [
        not is_connected(sample_initial(plan.n, plan.seed_of(k), plan.params.mode), plan.params.epsilon)
        for k in range(*bounds)
    ]


def _h0_trials(plan: TrialPlan, bounds: Tuple[int, int]) -> List[bool]:
    return [
        h_statement(sample_initial(plan.n, plan.seed_of(k), plan.params.mode), plan.params.epsilon)
        for k in range(*bounds)
    ]


def _collect(plan: TrialPlan, kernel: Callable, workers: int) -> list:
    """Exécute les essais par blocs et concatène les résultats dans l'ordre des essais."""
    chunks = ordered_map(partial(kernel, plan), chunk_ranges(plan.trials, TRIALS_PER_CHUNK), workers)
    return [outcome for chunk in chunks for outcome in chunk]


def _record(
    plan: TrialPlan,
    successes: int,
    nonconverged: int = 0,
    mean_steps: Optional[float] = None,
    reference_bound: Optional[float] = None
) -> EstimateRecord:
    ci_low, ci_high = wilson_interval(successes, plan.trials)
    return EstimateRecord(
        n=plan.n,
        epsilon=float(plan.epsilon),
        trials=plan.trials,
        successes=successes,
        nonconverged=nonconverged,
        p_hat=successes / plan.trials,
        ci_low=ci_low,
        ci_high=ci_high,
        mean_steps=mean_steps,
        master_seed=plan.master_seed,
        reference_bound=reference_bound,
        generator=GENERATOR_NAME,
    )


# ============================================================================
# ESTIMATEURS
# ============================================================================

def estimate_consensus_probability(plan: TrialPlan, workers: int = 1) -> EstimateRecord:
    """
    Estime P(consensus) sur plan.trials trajectoires indépendantes.

    Les essais non convergés sont comptés à part et exclus des succès.
    mean_steps est la moyenne de converged_at sur les essais convergés.

    Args:
        plan: Plan de la cellule
        workers: Nombre de workers (sans effet sur le résultat)

    Returns:
        EstimateRecord avec intervalle de Wilson à 95 %
    """
    outcomes = _collect(plan, _consensus_trials, workers)
    successes = sum(1 for code, _ in outcomes if code == CONSENSUS)
    nonconverged = sum(1 for code, _ in outcomes if code == NOT_CONVERGED)
    steps = [s for code, s in outcomes if code != NOT_CONVERGED]
    mean_steps = float(np.mean(steps)) if steps else None

    if nonconverged:
        logger.warning(f"{nonconverged}/{plan.trials} essais non convergés (n={plan.n}, epsilon={plan.epsilon})")
    record = _record(plan, successes, nonconverged, mean_steps)
    logger.info(f"Consensus n={plan.n} epsilon={plan.epsilon}: {successes}/{plan.trials} (p={record.p_hat:.4f})")
    return record


def reference_bound_for(n: int, epsilon: Scalar) -> Optional[float]:
    """Borne de déconnexion si (n, epsilon) est dans son domaine, sinon None."""
    if n >= 2 and 0 < epsilon < 1:
        return float(disconnect_bound(n, epsilon))
    return None


def estimate_disconnect_probability(plan: TrialPlan, workers: int = 1) -> EstimateRecord:
    """
    Estime P(G(0) déconnecté), accompagnée de la borne (1 - epsilon)^(n - 2).

    Returns:
        EstimateRecord; reference_bound vaut None hors du domaine de la borne
    """
    disconnected = sum(_collect(plan, _disconnected_trials, workers))
    record = _record(plan, disconnected, reference_bound=reference_bound_for(plan.n, plan.params.epsilon))
    logger.info(f"Déconnexion n={plan.n} epsilon={plan.epsilon}: {disconnected}/{plan.trials}")
    return record


def estimate_h0_frequency(plan: TrialPlan, workers: int = 1) -> EstimateRecord:
    """Fréquence empirique de la propriété H sur le profil initial."""
    holds = sum(_collect(plan, _h0_trials, workers))
    record = _record(plan, holds)
    logger.info(f"H0 n={plan.n} epsilon={plan.epsilon}: {holds}/{plan.trials}")
    return record


def sweep(
    n_values: Sequence[int],
    epsilon_values: Sequence[float],
    trials: int,
    master_seed: int,
    params: ModelParams,
    workers: int = 1
) -> List[EstimateRecord]:
    """
    Estime P(consensus) sur la grille n x epsilon.

    Lignes triées par n puis epsilon croissants (doublons retirés). La graine de
    chaque cellule est cell_seed(master_seed, n, epsilon): elle ne dépend pas
    des autres cellules de la grille.

    Returns:
        Une EstimateRecord par cellule; master_seed y est la graine de la cellule
    """
    records: List[EstimateRecord] = []
    grid_n = sorted(set(int(n) for n in n_values))
    grid_eps = sorted(set(float(e) for e in epsilon_values))
    logger.info(f"Balayage {len(grid_n)}x{len(grid_eps)} cellules, {trials} essais, graine {master_seed}")
    for n in grid_n:
        for epsilon in grid_eps:
            plan = TrialPlan.build(n, epsilon, trials, cell_seed(master_seed, n, epsilon), params)
            records.append(estimate_consensus_probability(plan, workers))
    return records
