# src/hk_consensus/core/utils/value_parsing.py
# Lecture des listes et plages de valeurs passées en ligne de commande

import math
from fractions import Fraction
from typing import List

from hk_consensus.core.constants import ErrorMessages
from hk_consensus.core.exceptions import UsageError

# Arrondi des valeurs d'une plage (supprime le bruit de start + k*step)
RANGE_DECIMALS = 12


def _finite(text: str, source: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise UsageError(ErrorMessages.BAD_NUMBER_LIST.format(source))
    if not math.isfinite(value):
        raise UsageError(ErrorMessages.BAD_NUMBER_LIST.format(source))
    return value


def parse_int_list(text: str) -> List[int]:
    """
    Lit une liste d'entiers séparés par des virgules ('10,100,1000').

    Raises:
        UsageError: Si un élément n'est pas un entier
    """
    items = [item.strip() for item in str(text).split(",")]
    try:
        values = [int(item) for item in items if item]
    except ValueError:
        raise UsageError(ErrorMessages.BAD_NUMBER_LIST.format(text))
    if not values:
        raise UsageError(ErrorMessages.BAD_NUMBER_LIST.format(text))
    return values


def parse_range(text: str) -> List[float]:
    """
    Développe une plage 'start:stop:step' bornes incluses.

    Le nombre de valeurs est floor((stop - start)/step + 1/2) + 1: la borne
    stop est atteinte à une demi-pas près.

    Raises:
        UsageError: Si la plage est mal formée, step <= 0 ou start > stop
    """
    parts = str(text).split(":")
    if len(parts) != 3:
        raise UsageError(ErrorMessages.BAD_RANGE.format(text))
    start, stop, step = (_finite(part.strip(), text) for part in parts)
    if step <= 0 or start > stop:
        raise UsageError(ErrorMessages.BAD_RANGE.format(text))
    count = math.floor((stop - start) / step + 0.5) + 1
    return [round(start + k * step, RANGE_DECIMALS) for k in range(count)]


def parse_float_spec(text: str) -> List[float]:
    """Lit une plage 'start:stop:step' ou une liste '0.1,0.5,1.0'."""
    if ":" in str(text):
        return parse_range(text)
    items = [item.strip() for item in str(text).split(",") if item.strip()]
    if not items:
        raise UsageError(ErrorMessages.BAD_NUMBER_LIST.format(text))
    return [_finite(item, text) for item in items]


def parse_opinions(text: str) -> List[str]:
    """
    Lit un profil explicite ('0.0,0.4,0.8' ou '0,1/3,2/3').

    Les valeurs restent sous forme de texte pour être converties exactement
    dans le mode arithmétique choisi.

    Raises:
        UsageError: Si une valeur n'est pas un nombre
    """
    items = [item.strip() for item in str(text).split(",") if item.strip()]
    if not items:
        raise UsageError(ErrorMessages.BAD_NUMBER_LIST.format(text))
    for item in items:
        try:
            Fraction(item)
        except (ValueError, ZeroDivisionError):
            raise UsageError(ErrorMessages.BAD_NUMBER_LIST.format(text))
    return items


def single_value(values: List, option: str):
    """
    Valeur unique d'une option qui accepte une liste dans d'autres commandes.

    Raises:
        UsageError: Si la liste est vide ou contient plusieurs valeurs
    """
    if not values:
        raise UsageError(ErrorMessages.MISSING_ARGUMENT.format(f"--{option}"))
    if len(values) != 1:
        raise UsageError(f"--{option} attend une seule valeur (reçu: {len(values)})")
    return values[0]
