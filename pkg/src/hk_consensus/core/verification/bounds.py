# src/hk_consensus/core/verification/bounds.py
# Borne supérieure de la probabilité que le graphe initial soit déconnecté

import math
from fractions import Fraction

from hk_consensus.core.constants import ErrorMessages
from hk_consensus.core.exceptions import DomainError
from hk_consensus.core.params import Scalar


def disconnect_bound(n: int, epsilon: Scalar) -> Scalar:
    """
    Borne (1 - epsilon)^(n - 2) sur P(G(0) déconnecté) pour n opinions uniformes.

    Args:
        n: Nombre d'agents (>= 2)
        epsilon: Seuil de confiance dans ]0, 1[

    Returns:
        Valeur de la borne (Fraction si epsilon est une Fraction)

    Raises:
        DomainError: Si n < 2 ou epsilon hors de ]0, 1[
    """
    if n < 2 or not 0 < epsilon < 1:
        raise DomainError(ErrorMessages.BOUND_DOMAIN.format(n, epsilon))
    return (1 - epsilon) ** (n - 2)


def disconnect_probability(n: int, epsilon: Scalar) -> Scalar:
    """
    Probabilité exacte que G(0) soit déconnecté pour n opinions uniformes.

    Inclusion-exclusion sur les n - 1 écarts intérieurs:
    sum_k (-1)^(k+1) C(n-1, k) (1 - k·epsilon)_+^n. Seuls les termes avec
    k·epsilon < 1 sont non nuls.

    Raises:
        DomainError: Si n < 1 ou epsilon <= 0
    """
    if n < 1 or not epsilon > 0:
        raise DomainError(ErrorMessages.BOUND_DOMAIN.format(n, epsilon))
    terms = []
    k = 1
    while k <= n - 1 and k * epsilon < 1:
        terms.append((-1) ** (k + 1) * math.comb(n - 1, k) * (1 - k * epsilon) ** n)
        k += 1
    if isinstance(epsilon, Fraction):
        return sum(terms, Fraction(0))
    return math.fsum(terms)
