# src/hk_consensus/core/profile.py
# Profil d'opinions canonique (trié) et fenêtres de voisinage

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, List, Sequence, Tuple

import numpy as np

from hk_consensus.core.constants import ErrorMessages
from hk_consensus.core.exceptions import DomainError, IndexOutOfRangeError
from hk_consensus.core.params import ArithmeticMode, ModelParams, Scalar, to_exact


@dataclass(frozen=True, eq=False)
class OpinionProfile:
    """
    Opinions de tous les agents à un instant t, en forme canonique.

    La position i dans le profil est la i-ème statistique d'ordre (base 0):
    le profil est trié une fois à t=0 et la dynamique synchrone ne change
    jamais l'ordre des agents.

    En mode flottant les opinions sont un tableau numpy float64; en mode
    rationnel un tableau numpy d'objets Fraction.
    """
    opinions: np.ndarray
    time: int = 0

    def __post_init__(self) -> None:
        values = self.opinions
        if len(values) == 0:
            raise DomainError(ErrorMessages.EMPTY_PROFILE)
        if values.dtype == object:
            items = values.tolist()
            if items[0] < 0 or items[-1] > 1:
                raise DomainError(ErrorMessages.OPINION_OUT_OF_RANGE.format(items[0] if items[0] < 0 else items[-1]))
            if any(b < a for a, b in zip(items, items[1:])):
                raise DomainError(ErrorMessages.NOT_CANONICAL)
        else:
            if not (np.all(np.isfinite(values)) and values[0] >= 0.0 and values[-1] <= 1.0):
                bad = values[(values < 0.0) | (values > 1.0) | ~np.isfinite(values)]
                raise DomainError(ErrorMessages.OPINION_OUT_OF_RANGE.format(bad[:1].tolist()))
            if np.any(np.diff(values) < 0):
                raise DomainError(ErrorMessages.NOT_CANONICAL)
        values.setflags(write=False)

    @classmethod
    def from_values(
        cls,
        values: Iterable[Any],
        mode: ArithmeticMode = ArithmeticMode.FLOAT,
        time: int = 0
    ) -> OpinionProfile:
        """
        Construit un profil canonique à partir de valeurs quelconques (triées ou non).

        Args:
            values: Opinions (flottants, chaînes décimales ou Fractions)
            mode: Mode arithmétique cible
            time: Compteur de pas

        Returns:
            Profil trié par ordre croissant

        Raises:
            DomainError: Si le profil est vide ou une opinion sort de [0,1]
        """
        mode = ArithmeticMode.parse(mode)
        if mode is ArithmeticMode.RATIONAL:
            exact = sorted(to_exact(v) for v in values)
            return cls(as_exact_array(exact), time)
        floats = np.array([float(v) for v in values], dtype=np.float64)
        return cls(np.sort(floats), time)

    @property
    def n(self) -> int:
        """Nombre d'agents."""
        return len(self.opinions)

    @property
    def mode(self) -> ArithmeticMode:
        """Mode arithmétique déduit du type des opinions."""
        return ArithmeticMode.RATIONAL if self.opinions.dtype == object else ArithmeticMode.FLOAT

    @property
    def is_exact(self) -> bool:
        return self.opinions.dtype == object

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> Scalar:
        return self.opinions[i]

    def values(self) -> List[Scalar]:
        """Retourne les opinions sous forme de liste Python."""
        return self.opinions.tolist()

    def to_floats(self) -> List[float]:
        """Retourne les opinions converties en flottants (pour JSON et CSV)."""
        return [float(v) for v in self.opinions.tolist()]

    def advanced(self, opinions: np.ndarray) -> OpinionProfile:
        """Retourne le profil du pas suivant (t + 1)."""
        return OpinionProfile(opinions, self.time + 1)

    def __repr__(self) -> str:
        preview = ", ".join(str(v) for v in self.values()[:6])
        suffix = ", ..." if self.n > 6 else ""
        return f"<OpinionProfile(t={self.time}, n={self.n}, opinions=[{preview}{suffix}])>"


@dataclass(frozen=True)
class NeighborWindow:
    """
    Voisinage N_i(t) d'un agent: plage d'indices contiguë [lo, hi] (bornes incluses)
    dans le profil canonique.
    """
    lo: int
    hi: int

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1


def as_exact_array(values: Sequence[Fraction]) -> np.ndarray:
    """Range des Fractions dans un tableau numpy d'objets (sans conversion)."""
    array = np.empty(len(values), dtype=object)
    array[:] = list(values)
    return array


def within(xi: Scalar, xj: Scalar, epsilon: Scalar) -> bool:
    """
    Prédicat de voisinage |x_j - x_i| <= epsilon (inégalité large).

    La différence est calculée par soustraction: en flottant elle est
    antisymétrique et monotone, ce qui garde les fenêtres contiguës.
    """
    return abs(xj - xi) <= epsilon


def check_index(profile: OpinionProfile, i: int) -> None:
    """
    Vérifie qu'un indice d'agent existe.

    Raises:
        IndexOutOfRangeError: Si i n'est pas dans [0, n)
    """
    if not 0 <= i < profile.n:
        raise IndexOutOfRangeError(i, profile.n)


def window_of(values: Sequence[Scalar], i: int, epsilon: Scalar) -> NeighborWindow:
    """Fenêtre de l'agent i par recherche dichotomique sur le prédicat de voisinage."""
    xi = values[i]
    lo = bisect_left(range(i + 1), -epsilon, key=lambda j: values[j] - xi)
    hi = i + bisect_right(range(i, len(values)), epsilon, key=lambda j: values[j] - xi) - 1
    return NeighborWindow(lo, hi)


def neighbors(profile: OpinionProfile, i: int, params: ModelParams) -> NeighborWindow:
    """
    Calcule le voisinage d'opinion N_i(t) de l'agent i.

    Args:
        profile: Profil canonique
        i: Indice de l'agent (base 0)
        params: Paramètres du modèle (seul epsilon est utilisé)

    Returns:
        Fenêtre maximale autour de i dont les opinions sont à distance <= epsilon de x_i

    Raises:
        IndexOutOfRangeError: Si i est hors de [0, n)
    """
    check_index(profile, i)
    epsilon = align_epsilon(profile, params.epsilon)
    return window_of(profile.opinions, i, epsilon)


def window_bounds(profile: OpinionProfile, epsilon: Scalar) -> Tuple[np.ndarray, np.ndarray]:
    """
    Calcule les fenêtres de tous les agents en une passe.

    Args:
        profile: Profil canonique
        epsilon: Seuil de confiance

    Returns:
        Tuple (lo, hi) de tableaux d'indices int64, bornes incluses
    """
    epsilon = align_epsilon(profile, epsilon)
    if profile.is_exact:
        return _exact_window_bounds(profile.values(), epsilon)
    return _float_window_bounds(profile.opinions, float(epsilon))


def align_epsilon(profile: OpinionProfile, epsilon: Scalar) -> Scalar:
    """Aligne le type d'epsilon sur celui des opinions."""
    if profile.is_exact:
        return epsilon if isinstance(epsilon, Fraction) else Fraction(repr(float(epsilon)))
    return float(epsilon)


def _exact_window_bounds(values: List[Fraction], epsilon: Fraction) -> Tuple[np.ndarray, np.ndarray]:
    """Deux pointeurs monotones: O(n) pour un profil trié."""
    n = len(values)
    lo = np.empty(n, dtype=np.int64)
    hi = np.empty(n, dtype=np.int64)
    left = 0
    right = 0
    for i, xi in enumerate(values):
        while xi - values[left] > epsilon:
            left += 1
        right = max(right, i)
        while right + 1 < n and values[right + 1] - xi <= epsilon:
            right += 1
        lo[i] = left
        hi[i] = right
    return lo, hi


def _float_window_bounds(x: np.ndarray, epsilon: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Fenêtres vectorisées: candidats par searchsorted sur x -/+ epsilon, puis
    correction des bornes pour que le prédicat x_j - x_i <= epsilon décide seul.
    """
    n = len(x)
    idx = np.arange(n)
    last = n - 1

    hi = np.searchsorted(x, x + epsilon, side="right") - 1
    lo = np.searchsorted(x, x - epsilon, side="left")
    hi = np.clip(hi, idx, last)
    lo = np.clip(lo, 0, idx)

    # Les arrondis de x +/- epsilon peuvent décaler une borne; chaque correction franchit
    # d'un coup toute une série de valeurs égales (même verdict du prédicat)
    while True:
        shrink = (hi > idx) & ((x[hi] - x) > epsilon)
        if not shrink.any():
            break
        hi[shrink] = np.maximum(np.searchsorted(x, x[hi[shrink]], side="left") - 1, idx[shrink])
    while True:
        nxt = np.minimum(hi + 1, last)
        grow = (hi < last) & ((x[nxt] - x) <= epsilon)
        if not grow.any():
            break
        hi[grow] = np.searchsorted(x, x[nxt[grow]], side="right") - 1
    while True:
        shrink = (lo < idx) & ((x[lo] - x) < -epsilon)
        if not shrink.any():
            break
        lo[shrink] = np.minimum(np.searchsorted(x, x[lo[shrink]], side="right"), idx[shrink])
    while True:
        prev = np.maximum(lo - 1, 0)
        grow = (lo > 0) & ((x[prev] - x) >= -epsilon)
        if not grow.any():
            break
        lo[grow] = np.searchsorted(x, x[prev[grow]], side="left")

    return lo.astype(np.int64), hi.astype(np.int64)
