# src/hk_consensus/core/graph.py
# Analyse du graphe d'opinions: connexité, composantes, inégalité de persistance des arêtes

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from hk_consensus.core.constants import ErrorMessages
from hk_consensus.core.exceptions import DomainError
from hk_consensus.core.params import Scalar
from hk_consensus.core.profile import (
    NeighborWindow, OpinionProfile, align_epsilon, check_index, window_bounds, window_of, within
)

__all__ = [
    "EdgeCounts", "OpinionGraphView", "is_connected", "is_connected_bruteforce", "components",
    "clusters_of", "max_gap", "summarize", "edge_counts", "edge_persists_condition",
    "h_statement", "window_bounds",
]

IndexRange = Tuple[int, int]


@dataclass(frozen=True)
class EdgeCounts:
    """
    Cardinalités des voisinages de deux agents i et j.

    Attributes:
        only_i: |N_i - N_j|
        only_j: |N_j - N_i|
        shared: |N_i ∩ N_j|
    """
    only_i: int
    only_j: int
    shared: int


@dataclass(frozen=True)
class OpinionGraphView:
    """
    Vue du graphe d'opinions G(t): arête (i, j) si |x_i - x_j| <= epsilon.

    L'adjacence n'est jamais matérialisée; chaque voisinage est une plage
    d'indices contiguë du profil canonique.
    """
    profile: OpinionProfile
    epsilon: Scalar

    def __post_init__(self) -> None:
        object.__setattr__(self, "epsilon", align_epsilon(self.profile, self.epsilon))

    @property
    def n(self) -> int:
        return self.profile.n

    def has_edge(self, i: int, j: int) -> bool:
        check_index(self.profile, i)
        check_index(self.profile, j)
        return within(self.profile[i], self.profile[j], self.epsilon)

    def window(self, i: int) -> NeighborWindow:
        check_index(self.profile, i)
        return window_of(self.profile.opinions, i, self.epsilon)

    def is_connected(self) -> bool:
        return is_connected(self.profile, self.epsilon)

    def components(self) -> List[IndexRange]:
        return components(self.profile, self.epsilon)


# ============================================================================
# CONNEXITÉ
# ============================================================================

def _gaps(profile: OpinionProfile) -> List[Scalar] | np.ndarray:
    if profile.is_exact:
        values = profile.values()
        return [b - a for a, b in zip(values, values[1:])]
    return np.diff(profile.opinions)


def is_connected(profile: OpinionProfile, epsilon: Scalar) -> bool:
    """
    Critère des écarts: G(t) est connexe si et seulement si chaque écart
    x_(i+1) - x_(i) est <= epsilon. O(n); un singleton est connexe.
    """
    epsilon = align_epsilon(profile, epsilon)
    gaps = _gaps(profile)
    if profile.is_exact:
        return all(gap <= epsilon for gap in gaps)
    return bool(np.all(gaps <= epsilon))


def adjacency_mask(profile: OpinionProfile, epsilon: Scalar) -> np.ndarray:
    """Matrice booléenne complète des arêtes (quadratique, réservée aux oracles)."""
    epsilon = align_epsilon(profile, epsilon)
    if profile.is_exact:
        values = profile.values()
        return np.array([[within(xi, xj, epsilon) for xj in values] for xi in values], dtype=bool)
    x = profile.opinions
    return np.abs(x[None, :] - x[:, None]) <= epsilon


def is_connected_bruteforce(profile: OpinionProfile, epsilon: Scalar) -> bool:
    """
    Connexité par parcours du graphe complet des paires (oracle O(n²)).

    Args:
        profile: Profil d'opinions
        epsilon: Seuil de confiance

    Returns:
        True si le graphe d'opinions a une seule composante
    """
    if profile.n == 1:
        return True
    graph = csr_matrix(adjacency_mask(profile, epsilon))
    count, _ = connected_components(graph, directed=False)
    return bool(count == 1)


def _split(values: Sequence[Scalar], lo: int, hi: int, threshold: Scalar) -> List[IndexRange]:
    """Coupe la plage [lo, hi] aux écarts strictement supérieurs au seuil."""
    ranges: List[IndexRange] = []
    start = lo
    for k in range(lo, hi):
        if values[k + 1] - values[k] > threshold:
            ranges.append((start, k))
            start = k + 1
    ranges.append((start, hi))
    return ranges


def components(profile: OpinionProfile, epsilon: Scalar) -> List[IndexRange]:
    """
    Composantes connexes de G(t) sous forme de plages d'indices.

    Les plages sont disjointes, ordonnées et couvrent 0..n-1.

    Args:
        profile: Profil canonique
        epsilon: Seuil de confiance

    Returns:
        Liste de plages (début, fin) bornes incluses
    """
    epsilon = align_epsilon(profile, epsilon)
    if profile.is_exact:
        return _split(profile.values(), 0, profile.n - 1, epsilon)

    cuts = np.flatnonzero(np.diff(profile.opinions) > epsilon)
    starts = np.concatenate(([0], cuts + 1))
    ends = np.concatenate((cuts, [profile.n - 1]))
    return [(int(a), int(b)) for a, b in zip(starts, ends)]


def clusters_of(values: Sequence[Scalar], epsilon: Scalar, consensus_tol: float) -> List[IndexRange]:
    """
    Plages des clusters d'un profil terminal.

    Coupe d'abord aux écarts > epsilon, puis toute plage dont l'étalement
    dépasse consensus_tol est recoupée aux écarts > consensus_tol.
    """
    clusters: List[IndexRange] = []
    for lo, hi in _split(values, 0, len(values) - 1, epsilon):
        if values[hi] - values[lo] > consensus_tol:
            clusters.extend(_split(values, lo, hi, consensus_tol))
        else:
            clusters.append((lo, hi))
    return clusters


def max_gap(profile: OpinionProfile) -> Scalar:
    """Plus grand écart entre opinions consécutives (0 pour un singleton)."""
    if profile.n == 1:
        return 0 if profile.is_exact else 0.0
    gaps = _gaps(profile)
    if profile.is_exact:
        return max(gaps)
    return float(np.max(gaps))


def summarize(profile: OpinionProfile, epsilon: Scalar) -> Tuple[bool, int, Scalar]:
    """
    Résumé de G(t) pour les traces.

    Returns:
        Tuple (connexe, nombre de composantes, écart maximal)
    """
    count = len(components(profile, epsilon))
    return count == 1, count, max_gap(profile)


# ============================================================================
# PERSISTANCE DES ARÊTES
# ============================================================================

def edge_counts(profile: OpinionProfile, i: int, j: int, epsilon: Scalar) -> EdgeCounts:
    """
    Calcule |N_i - N_j|, |N_j - N_i| et |N_i ∩ N_j| par arithmétique sur les bornes.

    Args:
        profile: Profil canonique
        i: Premier agent
        j: Second agent (distinct de i)
        epsilon: Seuil de confiance

    Returns:
        EdgeCounts des deux voisinages

    Raises:
        IndexOutOfRangeError: Si un indice est hors de [0, n)
        DomainError: Si i == j
    """
    graph = OpinionGraphView(profile, epsilon)
    first = graph.window(i)
    second = graph.window(j)
    if i == j:
        raise DomainError(ErrorMessages.SAME_AGENT.format(i))
    return _counts(first, second)


def _counts(first: NeighborWindow, second: NeighborWindow) -> EdgeCounts:
    shared = max(0, min(first.hi, second.hi) - max(first.lo, second.lo) + 1)
    return EdgeCounts(only_i=first.size - shared, only_j=second.size - shared, shared=shared)


def persistence_holds(counts: EdgeCounts) -> bool:
    """2·max(|N_i - N_j|, |N_j - N_i|) <= |N_i ∩ N_j|."""
    return 2 * max(counts.only_i, counts.only_j) <= counts.shared


def edge_persists_condition(profile: OpinionProfile, i: int, j: int, epsilon: Scalar) -> bool:
    """
    Condition suffisante pour que l'arête (i, j) survive à un pas synchrone.

    Raises:
        DomainError: Si (i, j) n'est pas une arête de G(t), ou si i == j
    """
    graph = OpinionGraphView(profile, epsilon)
    if not graph.has_edge(i, j):
        raise DomainError(ErrorMessages.NOT_AN_EDGE.format(i, j))
    return persistence_holds(edge_counts(profile, i, j, graph.epsilon))


def median_rank(n: int) -> int:
    """Rang ⌈n/2⌉ en numérotation 1..n."""
    return (n + 1) // 2


def h_pairs(n: int) -> List[IndexRange]:
    """
    Paires d'indices (base 0) de la propriété H: (1, ⌈n/2⌉) et (⌈n/2⌉, n) en rangs 1..n.
    """
    middle = median_rank(n) - 1
    return [(0, middle), (middle, n - 1)]


def h_statement(profile: OpinionProfile, epsilon: Scalar) -> bool:
    """
    Les agents extrêmes sont reliés à l'agent médian par des arêtes qui
    vérifient l'inégalité de persistance.

    Une paire dont les deux rangs coïncident (n <= 2) est satisfaite d'office;
    vrai pour n = 1.
    """
    if profile.n == 1:
        return True
    epsilon = align_epsilon(profile, epsilon)
    for i, j in h_pairs(profile.n):
        if i == j:
            continue
        if not within(profile[i], profile[j], epsilon):
            return False
        if not edge_persists_condition(profile, i, j, epsilon):
            return False
    return True
