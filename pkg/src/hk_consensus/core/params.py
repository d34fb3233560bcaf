# src/hk_consensus/core/params.py
# Paramètres du modèle (seuil de confiance, mode arithmétique, tolérances)

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Any

from hk_consensus.core.constants import (
    ArithmeticModes, DEFAULT_CONVERGENCE_TOL, DEFAULT_CONSENSUS_TOL,
    DEFAULT_MAX_STEPS, ErrorMessages
)
from hk_consensus.core.exceptions import DomainError, UsageError


class ArithmeticMode(str, Enum):
    """Mode arithmétique d'une simulation."""
    FLOAT = ArithmeticModes.FLOAT
    RATIONAL = ArithmeticModes.RATIONAL

    @classmethod
    def parse(cls, value: str | ArithmeticMode) -> ArithmeticMode:
        """
        Convertit un nom de mode ('float64', 'exact-rational', 'float', 'rational').

        Raises:
            UsageError: Si le nom est inconnu
        """
        if isinstance(value, ArithmeticMode):
            return value
        aliases = {
            "float": cls.FLOAT, "float64": cls.FLOAT,
            "rational": cls.RATIONAL, "exact": cls.RATIONAL, "exact-rational": cls.RATIONAL,
        }
        try:
            return aliases[value.strip().lower()]
        except KeyError:
            raise UsageError(f"Mode arithmétique inconnu: '{value}'")


Scalar = float | Fraction


def to_exact(value: Any) -> Fraction:
    """
    Convertit une valeur en Fraction.

    Les chaînes décimales sont lues exactement ('0.4' -> 2/5); les flottants
    gardent leur valeur binaire exacte.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def coerce_scalar(value: Any, mode: ArithmeticMode) -> Scalar:
    """Convertit une valeur vers le type scalaire du mode."""
    if mode is ArithmeticMode.RATIONAL:
        if isinstance(value, float):
            # Un epsilon saisi comme 0.3 signifie 3/10, pas son arrondi binaire
            return Fraction(repr(value))
        return to_exact(value)
    return float(value)


@dataclass(frozen=True)
class ModelParams:
    """
    Paramètres d'une simulation de Hegselmann-Krause.

    Attributes:
        epsilon: Seuil de confiance (> 0)
        mode: Mode arithmétique (flottant 64 bits ou rationnel exact)
        convergence_tol: Déplacement maximal d'un pas pour déclarer un point fixe (mode flottant)
        consensus_tol: Étalement maximal d'un cluster final
        max_steps: Nombre maximal de pas d'une trajectoire
        trace: Enregistre un résumé du graphe d'opinions à chaque pas
    """
    epsilon: Scalar
    mode: ArithmeticMode = ArithmeticMode.FLOAT
    convergence_tol: float = DEFAULT_CONVERGENCE_TOL
    consensus_tol: float = DEFAULT_CONSENSUS_TOL
    max_steps: int = DEFAULT_MAX_STEPS
    trace: bool = False

    def __post_init__(self) -> None:
        mode = ArithmeticMode.parse(self.mode)
        object.__setattr__(self, "mode", mode)
        epsilon = coerce_scalar(self.epsilon, mode)
        object.__setattr__(self, "epsilon", epsilon)

        if not epsilon > 0:
            raise DomainError(ErrorMessages.EPSILON_NOT_POSITIVE.format(self.epsilon))
        if self.convergence_tol < 0 or self.consensus_tol < 0:
            raise DomainError(ErrorMessages.NEGATIVE_TOL)
        if not self.convergence_tol < epsilon:
            raise DomainError(ErrorMessages.TOL_NOT_BELOW_EPSILON.format(self.convergence_tol, epsilon))
        if self.max_steps < 1:
            raise DomainError(ErrorMessages.MAX_STEPS_INVALID.format(self.max_steps))

    @property
    def is_exact(self) -> bool:
        """Indique si les calculs sont faits en rationnels exacts."""
        return self.mode is ArithmeticMode.RATIONAL

    def with_epsilon(self, epsilon: Any) -> ModelParams:
        """Retourne une copie avec un autre seuil de confiance."""
        return replace(self, epsilon=epsilon)
