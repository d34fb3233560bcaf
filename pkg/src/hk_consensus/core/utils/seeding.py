# src/hk_consensus/core/utils/seeding.py
# Dérivation déterministe des graines (finaliseur SplitMix64)

import numpy as np

from hk_consensus.core.constants import (
    CELL_EPS_SALT, CELL_N_SALT, SPLITMIX_GAMMA, SPLITMIX_MUL_1, SPLITMIX_MUL_2, UINT64_MASK
)


def splitmix64(value: int) -> int:
    """
    Finaliseur SplitMix64 sur 64 bits non signés.

    z = value + GAMMA
    z = (z ^ (z >> 30)) * MUL_1
    z = (z ^ (z >> 27)) * MUL_2
    retourne z ^ (z >> 31), chaque opération modulo 2^64.
    """
    z = (value + SPLITMIX_GAMMA) & UINT64_MASK
    z = ((z ^ (z >> 30)) * SPLITMIX_MUL_1) & UINT64_MASK
    z = ((z ^ (z >> 27)) * SPLITMIX_MUL_2) & UINT64_MASK
    return z ^ (z >> 31)


def trial_seed(master_seed: int, trial_index: int) -> int:
    """
    Graine de l'essai trial_index: splitmix64(master ^ (index * GAMMA mod 2^64)).

    Args:
        master_seed: Graine maîtresse (ramenée sur 64 bits)
        trial_index: Indice de l'essai (ou du cas de vérification)

    Returns:
        Graine 64 bits non signée
    """
    return splitmix64((master_seed & UINT64_MASK) ^ ((trial_index * SPLITMIX_GAMMA) & UINT64_MASK))


def epsilon_bits(epsilon: float) -> int:
    """Motif binaire IEEE-754 de epsilon en double précision."""
    return int(np.float64(epsilon).view(np.uint64))


def cell_seed(master_seed: int, n: int, epsilon: float) -> int:
    """
    Graine maîtresse d'une cellule (n, epsilon) d'un balayage.

    Dépend de la valeur d'epsilon et non de sa position dans la grille:
    ajouter des cellules ne change pas les graines existantes.
    """
    mixed = splitmix64((master_seed & UINT64_MASK) ^ ((n * CELL_N_SALT) & UINT64_MASK))
    return splitmix64(mixed ^ ((epsilon_bits(epsilon) * CELL_EPS_SALT) & UINT64_MASK))


def rng_for(seed: int) -> np.random.Generator:
    """Générateur PCG64 initialisé par une graine 64 bits."""
    return np.random.default_rng(seed & UINT64_MASK)


def seed_mixing_metadata() -> dict:
    """Constantes de mélange publiées dans les métadonnées des sorties."""
    return {
        'finalizer': 'splitmix64',
        'gamma': hex(SPLITMIX_GAMMA),
        'mul_1': hex(SPLITMIX_MUL_1),
        'mul_2': hex(SPLITMIX_MUL_2),
        'trial_seed': 'splitmix64(master ^ (index * gamma))',
        'cell_seed': 'splitmix64(splitmix64(master ^ (n * n_salt)) ^ (bits(epsilon) * eps_salt))',
        'n_salt': hex(CELL_N_SALT),
        'eps_salt': hex(CELL_EPS_SALT),
    }
