# src/hk_consensus/core/dynamics.py
# Opérateurs de mise à jour du modèle de Hegselmann-Krause et exécution jusqu'à convergence

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from hk_consensus.core.constants import ORDER_TOL, ErrorMessages
from hk_consensus.core.exceptions import NonConvergenceError
from hk_consensus.core.graph import clusters_of, summarize
from hk_consensus.core.params import ModelParams, Scalar
from hk_consensus.core.profile import (
    OpinionProfile, align_epsilon, as_exact_array, check_index, window_bounds, window_of
)
from hk_consensus.core.utils.logging_config import get_logger
from hk_consensus.models.trace_record import TraceRecord

logger = get_logger()


class RunStatus(str, Enum):
    """Issue d'une trajectoire."""
    CONVERGED = "converged"
    NON_CONVERGED = "non-converged"


@dataclass(frozen=True)
class Cluster:
    """Groupe d'agents partageant une opinion terminale."""
    value: Scalar
    size: int
    spread: Scalar


@dataclass
class TrajectoryResult:
    """
    Résultat d'une trajectoire.

    consensus est vrai si et seulement si clusters contient exactement un élément.
    """
    converged_at: Optional[int]
    final_profile: OpinionProfile
    clusters: List[Cluster]
    consensus: bool
    status: RunStatus
    steps_taken: int
    connectivity_history: Optional[List[bool]] = None
    trace: Optional[List[TraceRecord]] = field(default=None, repr=False)

    @property
    def converged(self) -> bool:
        return self.status is RunStatus.CONVERGED

    def require_converged(self) -> TrajectoryResult:
        """
        Retourne le résultat s'il a convergé.

        Raises:
            NonConvergenceError: Si max_steps a été atteint sans point fixe
        """
        if not self.converged:
            raise NonConvergenceError(self, ErrorMessages.NON_CONVERGED.format(self.steps_taken))
        return self


# ============================================================================
# PAS SYNCHRONE
# ============================================================================

def synchronous_means(profile: OpinionProfile, params: ModelParams) -> np.ndarray:
    """
    Calcule la moyenne de la fenêtre de voisinage de chaque agent (chemin rapide).

    Fenêtres par deux pointeurs (rationnels) ou searchsorted corrigé (flottants),
    puis sommes préfixes dans l'ordre croissant des indices. Le résultat est
    dans l'ordre des agents, sans re-tri.

    Args:
        profile: Profil canonique
        params: Paramètres du modèle

    Returns:
        Tableau des nouvelles opinions x_i(t+1), même type que le profil
    """
    lo, hi = window_bounds(profile, params.epsilon)
    if profile.is_exact:
        values = profile.values()
        prefix = [Fraction(0)]
        for v in values:
            prefix.append(prefix[-1] + v)
        means = [
            values[a] if values[a] == values[b] else (prefix[b + 1] - prefix[a]) / (b - a + 1)
            for a, b in zip(lo.tolist(), hi.tolist())
        ]
        return as_exact_array(means)

    x = profile.opinions
    prefix = np.concatenate(([0.0], np.cumsum(x)))
    means = (prefix[hi + 1] - prefix[lo]) / (hi - lo + 1)
    # La moyenne reste dans l'enveloppe de sa fenêtre; une fenêtre constante rend sa valeur exacte
    means = np.clip(means, x[lo], x[hi])
    flat = x[lo] == x[hi]
    means[flat] = x[lo][flat]
    return means


def naive_synchronous_means(profile: OpinionProfile, params: ModelParams) -> np.ndarray:
    """
    Moyennes de voisinage par balayage de toutes les paires (référence quadratique).

    Les sommes sont accumulées dans l'ordre croissant des indices.
    """
    if profile.is_exact:
        values = profile.values()
        epsilon = align_epsilon(profile, params.epsilon)
        means = []
        for xi in values:
            total = Fraction(0)
            count = 0
            for xj in values:
                if abs(xj - xi) <= epsilon:
                    total += xj
                    count += 1
            means.append(total / count)
        return as_exact_array(means)

    x = profile.opinions
    mask = np.abs(x[None, :] - x[:, None]) <= float(params.epsilon)
    sums = np.cumsum(np.where(mask, x[None, :], 0.0), axis=1)[:, -1]
    return sums / mask.sum(axis=1)


def canonicalize(profile: OpinionProfile, means: np.ndarray) -> OpinionProfile:
    """
    Construit le profil t+1 à partir des moyennes brutes.

    Les moyennes sont déjà triées (préservation de l'ordre); en flottant une
    inversion de l'ordre de l'arrondi est corrigée par un tri.
    """
    if profile.is_exact:
        items = means.tolist()
        if any(b < a for a, b in zip(items, items[1:])):
            logger.error(f"Ordre non préservé en arithmétique exacte au pas t={profile.time}")
            means = as_exact_array(sorted(items))
        return profile.advanced(means)

    drops = np.diff(means)
    if drops.size and drops.min() < 0:
        if drops.min() < -ORDER_TOL:
            logger.warning(f"Inversion d'ordre {drops.min():.3e} au pas t={profile.time}")
        means = np.sort(means)
    # Les moyennes restent dans [0,1]; on efface un éventuel dépassement d'arrondi
    np.clip(means, 0.0, 1.0, out=means)
    return profile.advanced(means)


def sync_step(profile: OpinionProfile, params: ModelParams) -> OpinionProfile:
    """
    Pas synchrone: chaque agent prend simultanément la moyenne de son voisinage.

    Args:
        profile: Profil canonique à l'instant t
        params: Paramètres du modèle

    Returns:
        Profil canonique à l'instant t+1
    """
    return canonicalize(profile, synchronous_means(profile, params))


def sync_step_naive(profile: OpinionProfile, params: ModelParams) -> OpinionProfile:
    """Pas synchrone de référence, coût quadratique (oracle du chemin rapide)."""
    return canonicalize(profile, naive_synchronous_means(profile, params))


# ============================================================================
# PAS ASYNCHRONE
# ============================================================================

def async_step(profile: OpinionProfile, params: ModelParams, agent: int) -> OpinionProfile:
    """
    Pas asynchrone: seul l'agent choisi prend la moyenne de son voisinage.

    Le profil est re-trié car un seul agent peut en dépasser d'autres.

    Args:
        profile: Profil canonique
        params: Paramètres du modèle
        agent: Indice de l'agent qui se met à jour

    Returns:
        Profil canonique à l'instant t+1

    Raises:
        IndexOutOfRangeError: Si agent est hors de [0, n)
    """
    check_index(profile, agent)
    values = profile.values()
    window = window_of(values, agent, align_epsilon(profile, params.epsilon))
    members = values[window.lo:window.hi + 1]
    if members[0] == members[-1]:
        new_value = members[0]
    elif profile.is_exact:
        new_value = sum(members, Fraction(0)) / len(members)
    else:
        new_value = min(max(sum(members) / len(members), members[0]), members[-1])

    del values[agent]
    values.append(new_value)
    values.sort()
    if profile.is_exact:
        return profile.advanced(as_exact_array(values))
    return profile.advanced(np.array(values, dtype=np.float64))


# ============================================================================
# POINT FIXE ET CONVERGENCE
# ============================================================================

def max_displacement(before: np.ndarray, after: np.ndarray) -> Scalar:
    """Déplacement maximal composante par composante (exact en mode rationnel)."""
    if before.dtype == object:
        return max(abs(a - b) for a, b in zip(before.tolist(), after.tolist()))
    return float(np.max(np.abs(after - before)))


def _is_settled(profile: OpinionProfile, means: np.ndarray, params: ModelParams) -> bool:
    if profile.is_exact:
        return profile.values() == means.tolist()
    return max_displacement(profile.opinions, means) <= params.convergence_tol


def is_fixed_point(profile: OpinionProfile, params: ModelParams) -> bool:
    """
    Indique si le pas synchrone laisse le profil inchangé.

    Égalité exacte en mode rationnel; en flottant, déplacement maximal <= convergence_tol.
    """
    return _is_settled(profile, synchronous_means(profile, params), params)


def final_clusters(profile: OpinionProfile, params: ModelParams) -> List[Cluster]:
    """
    Regroupe les opinions finales en clusters.

    Coupe aux écarts > epsilon; un groupe dont l'étalement dépasse consensus_tol
    n'est pas un cluster et est lui-même coupé aux écarts > consensus_tol.
    """
    values = profile.values()
    result: List[Cluster] = []
    epsilon = align_epsilon(profile, params.epsilon)
    for start, end in clusters_of(values, epsilon, params.consensus_tol):
        members = values[start:end + 1]
        if profile.is_exact:
            centre: Scalar = sum(members, Fraction(0)) / len(members)
        else:
            centre = float(np.mean(members))
        result.append(Cluster(value=centre, size=len(members), spread=members[-1] - members[0]))
    return result


def _trace_record(profile: OpinionProfile, params: ModelParams) -> TraceRecord:
    connected, cluster_count, gap = summarize(profile, params.epsilon)
    return TraceRecord(
        t=profile.time,
        opinions=profile.to_floats(),
        connected=connected,
        cluster_count=cluster_count,
        max_gap=float(gap),
    )


def run(initial: OpinionProfile, params: ModelParams) -> TrajectoryResult:
    """
    Itère le pas synchrone jusqu'à un point fixe ou max_steps pas.

    converged_at est le premier t tel que x(t) est un point fixe.

    Args:
        initial: Profil canonique initial
        params: Paramètres du modèle (params.trace active l'historique)

    Returns:
        TrajectoryResult; status NON_CONVERGED si max_steps est atteint
    """
    profile = initial
    trace: List[TraceRecord] | None = [] if params.trace else None
    converged_at: Optional[int] = None

    steps = 0
    while True:
        if trace is not None:
            trace.append(_trace_record(profile, params))
        means = synchronous_means(profile, params)
        if _is_settled(profile, means, params):
            converged_at = steps
            break
        if steps >= params.max_steps:
            break
        profile = canonicalize(profile, means)
        steps += 1

    status = RunStatus.CONVERGED if converged_at is not None else RunStatus.NON_CONVERGED
    if status is RunStatus.NON_CONVERGED:
        logger.warning(f"Trajectoire non convergée après {steps} pas (n={initial.n}, epsilon={params.epsilon})")
    return _build_result(profile, params, status, converged_at, steps, trace)


def run_asynchronous(initial: OpinionProfile, params: ModelParams, seed: int) -> TrajectoryResult:
    """
    Variante asynchrone: un agent tiré uniformément se met à jour à chaque pas.

    Le point fixe est testé tous les n pas; le compteur compte les mises à jour
    individuelles et max_steps les borne.

    Args:
        initial: Profil canonique initial
        params: Paramètres du modèle
        seed: Graine du générateur PCG64 qui choisit les agents

    Returns:
        TrajectoryResult de la variante asynchrone
    """
    rng = np.random.default_rng(seed)
    profile = initial
    n = initial.n
    trace: List[TraceRecord] | None = [] if params.trace else None
    converged_at: Optional[int] = None

    steps = 0
    while True:
        if steps % n == 0:
            if trace is not None:
                trace.append(_trace_record(profile, params))
            if is_fixed_point(profile, params):
                converged_at = steps
                break
        if steps >= params.max_steps:
            break
        profile = async_step(profile, params, int(rng.integers(n)))
        steps += 1

    status = RunStatus.CONVERGED if converged_at is not None else RunStatus.NON_CONVERGED
    if status is RunStatus.NON_CONVERGED:
        logger.warning(f"Trajectoire asynchrone non convergée après {steps} mises à jour")
    return _build_result(profile, params, status, converged_at, steps, trace)


def _build_result(
    profile: OpinionProfile,
    params: ModelParams,
    status: RunStatus,
    converged_at: Optional[int],
    steps: int,
    trace: Optional[List[TraceRecord]]
) -> TrajectoryResult:
    clusters = final_clusters(profile, params)
    history = [record.connected for record in trace] if trace is not None else None
    return TrajectoryResult(
        converged_at=converged_at,
        final_profile=profile,
        clusters=clusters,
        consensus=len(clusters) == 1,
        status=status,
        steps_taken=steps,
        connectivity_history=history,
        trace=trace,
    )


# ============================================================================
# TRAJECTOIRES EN LOT (flottants)
# ============================================================================

def batch_synchronous_means(x: np.ndarray, epsilon: float) -> np.ndarray:
    """
    Moyennes de voisinage d'un lot de profils triés, une ligne par profil.

    Fenêtres lues directement sur le prédicat x_j - x_i <= epsilon, puis mêmes
    sommes préfixes, même écrêtage et même règle des fenêtres constantes que
    synchronous_means: chaque ligne est identique bit à bit au pas individuel.
    """
    diffs = x[:, None, :] - x[:, :, None]
    hi = np.count_nonzero(diffs <= epsilon, axis=2) - 1
    lo = np.count_nonzero(diffs < -epsilon, axis=2)

    prefix = np.concatenate((np.zeros((len(x), 1)), np.cumsum(x, axis=1)), axis=1)
    sums = np.take_along_axis(prefix, hi + 1, axis=1) - np.take_along_axis(prefix, lo, axis=1)
    means = sums / (hi - lo + 1)
    low = np.take_along_axis(x, lo, axis=1)
    high = np.take_along_axis(x, hi, axis=1)
    means = np.clip(means, low, high)
    flat = low == high
    means[flat] = low[flat]
    return means


def run_batch(initial: np.ndarray, params: ModelParams) -> Tuple[np.ndarray, np.ndarray]:
    """
    Exécute run() sur un lot de profils flottants sans construire de profils.

    Mêmes règles d'arrêt que run(): une ligne s'arrête au premier point fixe,
    toutes s'arrêtent à max_steps.

    Args:
        initial: Matrice (essais x n) de profils triés dans [0,1]
        params: Paramètres du modèle (mode flottant)

    Returns:
        Tuple (converged_at, consensus); converged_at vaut -1 pour une ligne non convergée
    """
    x = np.array(initial, dtype=np.float64)
    epsilon = float(params.epsilon)
    converged_at = np.full(len(x), -1, dtype=np.int64)
    active = np.arange(len(x))

    steps = 0
    while active.size:
        current = x[active]
        means = batch_synchronous_means(current, epsilon)
        settled = np.max(np.abs(means - current), axis=1) <= params.convergence_tol
        converged_at[active[settled]] = steps
        if steps >= params.max_steps:
            break
        active = active[~settled]
        means = means[~settled]
        drops = np.diff(means, axis=1)
        inverted = (drops < 0).any(axis=1)
        if inverted.any():
            if drops.min() < -ORDER_TOL:
                logger.warning(f"Inversion d'ordre {drops.min():.3e} au pas t={steps} (lot)")
            means[inverted] = np.sort(means[inverted], axis=1)
        np.clip(means, 0.0, 1.0, out=means)
        x[active] = means
        steps += 1

    consensus = np.array(
        [len(clusters_of(row, epsilon, params.consensus_tol)) == 1 for row in x.tolist()],
        dtype=bool,
    )
    return converged_at, consensus


def reflect(profile: OpinionProfile) -> OpinionProfile:
    """Symétrie x -> 1 - x, remise en forme canonique."""
    if profile.is_exact:
        return OpinionProfile(as_exact_array([1 - v for v in reversed(profile.values())]), profile.time)
    return OpinionProfile(np.ascontiguousarray((1.0 - profile.opinions)[::-1]), profile.time)
