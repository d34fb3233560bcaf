# src/hk_consensus/core/verification/matching.py
# Décomposition d'une combinaison linéaire de somme nulle en différences pondérées

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence

from hk_consensus.core.constants import ErrorMessages, ZERO_SUM_TOL
from hk_consensus.core.exceptions import DomainError
from hk_consensus.core.params import Scalar


@dataclass(frozen=True)
class MatchingTerm:
    """Terme c·(x_j - x_k) avec lambda_j > 0 et lambda_k < 0."""
    coefficient: Scalar
    positive_index: int
    negative_index: int


@dataclass
class MatchingDecomposition:
    """
    Écriture de sum_i lambda_i x_i comme sum c·(x_j - x_k), c >= 0.

    La somme des coefficients vaut la masse positive totale.
    """
    terms: List[MatchingTerm] = field(default_factory=list)
    total_positive_mass: Scalar = 0
    exact: bool = False

    def mass(self) -> Scalar:
        """Somme des coefficients."""
        if self.exact:
            return sum((term.coefficient for term in self.terms), Fraction(0))
        return math.fsum(term.coefficient for term in self.terms)

    def reconstruct(self, xs: Sequence[Scalar]) -> Scalar:
        """Évalue sum c·(x_j - x_k) sur un vecteur d'opinions."""
        parts = (term.coefficient * (xs[term.positive_index] - xs[term.negative_index]) for term in self.terms)
        if self.exact:
            return sum(parts, Fraction(0))
        return math.fsum(parts)


def linear_combination(lambdas: Sequence[Scalar], xs: Sequence[Scalar]) -> Scalar:
    """sum_i lambda_i x_i (somme compensée en flottant)."""
    products = [lam * x for lam, x in zip(lambdas, xs)]
    if any(isinstance(p, float) for p in products):
        return math.fsum(products)
    return sum(products, Fraction(0))


def matching_decomposition(lambdas: Sequence[Scalar], xs: Sequence[Scalar]) -> MatchingDecomposition:
    """
    Apparie la masse positive des lambda avec leur masse négative.

    Parcours glouton à deux pointeurs: à chaque étape le plus petit des deux
    restes est consommé, un terme est émis et le côté épuisé avance. Les
    coefficients nuls sont ignorés. Calcul exact si aucun lambda n'est un flottant.

    Args:
        lambdas: Coefficients de somme nulle
        xs: Opinions (même longueur que lambdas)

    Returns:
        MatchingDecomposition

    Raises:
        DomainError: Si les longueurs diffèrent ou si la somme n'est pas nulle
            (à 1e-12 près en flottant, exactement sinon)
    """
    if len(lambdas) != len(xs):
        raise DomainError(ErrorMessages.LENGTH_MISMATCH.format(len(lambdas), len(xs)))

    exact = not any(isinstance(lam, float) for lam in lambdas)
    if exact:
        coefficients: List[Scalar] = [Fraction(lam) for lam in lambdas]
        total = sum(coefficients, Fraction(0))
        if total != 0:
            raise DomainError(ErrorMessages.NONZERO_SUM.format(total))
    else:
        coefficients = [float(lam) for lam in lambdas]
        total = math.fsum(coefficients)
        if abs(total) > ZERO_SUM_TOL:
            raise DomainError(ErrorMessages.NONZERO_SUM.format(total))

    positives = [(i, lam) for i, lam in enumerate(coefficients) if lam > 0]
    negatives = [(i, -lam) for i, lam in enumerate(coefficients) if lam < 0]
    mass = sum((lam for _, lam in positives), Fraction(0)) if exact else math.fsum(lam for _, lam in positives)

    terms: List[MatchingTerm] = []
    p = q = 0
    left = positives[0][1] if positives else 0
    right = negatives[0][1] if negatives else 0
    while p < len(positives) and q < len(negatives):
        c = min(left, right)
        terms.append(MatchingTerm(c, positives[p][0], negatives[q][0]))
        left -= c
        right -= c
        if left <= 0:
            p += 1
            left = positives[p][1] if p < len(positives) else 0
        if right <= 0:
            q += 1
            right = negatives[q][1] if q < len(negatives) else 0

    return MatchingDecomposition(terms=terms, total_positive_mass=mass, exact=exact)
