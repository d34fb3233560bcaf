# src/hk_consensus/core/verification/instances.py
# Générateurs d'instances aléatoires pour les suites de propriétés

from fractions import Fraction
from typing import List

import numpy as np

from hk_consensus.core.params import ArithmeticMode, Scalar
from hk_consensus.core.profile import OpinionProfile, as_exact_array

# Dénominateurs des profils rationnels (petits pour garder les calculs exacts rapides)
RATIONAL_DENOMINATORS = [4, 10, 12, 100, 10_000]

# Part des instances tirées sur une grille k/m, avec epsilon = j/m (égalités au seuil)
GRID_SHARE = 0.25


def random_n(rng: np.random.Generator, max_n: int, min_n: int = 1) -> int:
    return int(rng.integers(min_n, max_n + 1))


def random_profile(rng: np.random.Generator, n: int, mode: ArithmeticMode) -> OpinionProfile:
    """Profil de n opinions uniformes sur [0,1], canonique."""
    if mode is ArithmeticMode.RATIONAL:
        d = int(rng.choice(RATIONAL_DENOMINATORS))
        values = sorted(Fraction(int(k), d) for k in rng.integers(0, d + 1, size=n))
        return OpinionProfile(as_exact_array(values))
    return OpinionProfile(np.sort(rng.random(n)))


def grid_profile(rng: np.random.Generator, n: int, mode: ArithmeticMode, m: int) -> OpinionProfile:
    """Profil sur la grille {0, 1/m, ..., 1}: nombreuses égalités et distances exactement au seuil."""
    ks = np.sort(rng.integers(0, m + 1, size=n))
    if mode is ArithmeticMode.RATIONAL:
        return OpinionProfile(as_exact_array([Fraction(int(k), m) for k in ks]))
    return OpinionProfile(ks / m)


def random_epsilon(rng: np.random.Generator, mode: ArithmeticMode, low: float = 0.0, high: float = 1.0) -> Scalar:
    """Epsilon uniforme dans ]low, high]."""
    if mode is ArithmeticMode.RATIONAL:
        lo = int(np.floor(low * 1000)) + 1
        hi = int(np.floor(high * 1000))
        return Fraction(int(rng.integers(lo, hi + 1)), 1000)
    return float(high - (high - low) * rng.random())


def log_uniform_epsilon(rng: np.random.Generator, mode: ArithmeticMode, low: float, high: float) -> Scalar:
    """Epsilon log-uniforme dans [low, high]."""
    value = float(np.exp(rng.uniform(np.log(low), np.log(high))))
    if mode is ArithmeticMode.RATIONAL:
        return Fraction(value).limit_denominator(10**6)
    return value


def profile_and_epsilon(
    rng: np.random.Generator,
    mode: ArithmeticMode,
    max_n: int,
    low: float = 0.0,
    high: float = 1.0
) -> tuple[OpinionProfile, Scalar]:
    """
    Instance (profil, epsilon) générique.

    Une part GRID_SHARE des instances est tirée sur une grille avec un epsilon
    multiple du pas, pour exercer les égalités |x_i - x_j| = epsilon.
    """
    n = random_n(rng, max_n)
    if rng.random() < GRID_SHARE:
        m = int(rng.integers(2, 21))
        lo_j = max(1, int(np.ceil(low * m)) if low > 0 else 1)
        hi_j = max(lo_j, int(np.floor(high * m)))
        j = int(rng.integers(lo_j, hi_j + 1))
        epsilon: Scalar = Fraction(j, m) if mode is ArithmeticMode.RATIONAL else j / m
        return grid_profile(rng, n, mode, m), epsilon
    return random_profile(rng, n, mode), random_epsilon(rng, mode, low, high)


def zero_sum_lambdas(rng: np.random.Generator, length: int, mode: ArithmeticMode) -> List[Scalar]:
    """Coefficients de somme nulle, avec des zéros (exactement nulle en rationnel)."""
    if mode is ArithmeticMode.RATIONAL:
        values = [Fraction(int(v), int(rng.integers(1, 7))) for v in rng.integers(-5, 6, size=length)]
        values[0] -= sum(values, Fraction(0))
        return values
    raw = rng.normal(size=length)
    raw[rng.random(length) < 0.2] = 0.0
    raw -= raw.mean()
    return [float(v) for v in raw]
