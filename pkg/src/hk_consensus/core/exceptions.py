# src/hk_consensus/core/exceptions.py
# Exceptions personnalisées pour l'application

from typing import Any


class HKError(Exception):
    """Exception de base de l'application."""
    def __init__(self, message: str = "Erreur de la simulation Hegselmann-Krause."):
        self.message = message
        super().__init__(self.message)


class UsageError(HKError):
    """Exception levée lorsqu'un argument ou une entrée est mal formé."""
    def __init__(self, message: str = "Utilisation incorrecte."):
        super().__init__(message)


class DomainError(HKError):
    """Exception levée lorsqu'une valeur sort du domaine d'une opération."""
    def __init__(self, message: str = "Valeur hors du domaine de l'opération."):
        super().__init__(message)


class IndexOutOfRangeError(UsageError):
    """Exception levée lorsque l'indice d'un agent n'existe pas dans le profil."""
    def __init__(self, index: int, n: int):
        self.index = index
        self.n = n
        super().__init__(f"Indice d'agent {index} hors de [0, {n})")


class UnknownSuiteError(UsageError):
    """Exception levée lorsque la suite de vérification demandée n'existe pas."""
    def __init__(self, message: str = "Suite de vérification inconnue."):
        super().__init__(message)


class ConfigFileError(UsageError):
    """Exception levée lorsque le fichier de configuration est absent ou invalide."""
    def __init__(self, message: str = "Fichier de configuration invalide."):
        super().__init__(message)


class OutputWriteError(UsageError):
    """Exception levée lorsqu'un fichier de sortie ne peut pas être écrit."""
    def __init__(self, message: str = "Impossible d'écrire le fichier de sortie."):
        super().__init__(message)


class NonConvergenceError(HKError):
    """Exception levée lorsqu'une trajectoire n'atteint pas de point fixe en max_steps pas."""
    def __init__(self, result: Any, message: str = "La trajectoire n'a pas convergé."):
        self.result = result
        super().__init__(message)


class VerificationFailedError(HKError):
    """Exception levée lorsqu'une suite de propriétés trouve au moins un contre-exemple."""
    def __init__(self, reports: Any, message: str = "Au moins une propriété est violée."):
        self.reports = reports
        super().__init__(message)
