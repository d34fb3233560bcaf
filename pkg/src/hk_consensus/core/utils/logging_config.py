# src/hk_consensus/core/utils/logging_config.py
# Configuration centralisée du système de logging

import logging
import sys
from logging.handlers import RotatingFileHandler

from hk_consensus.core.constants import (
    APP_LOG_FILE, VERIFICATION_LOG_FILE, LOGS_DIR, APP_NAME,
    LOG_FORMAT, LOG_DATE_FORMAT, DEFAULT_LOG_LEVEL
)


def _file_handler(path, backup_count: int, formatter: logging.Formatter) -> RotatingFileHandler | None:
    """Crée un handler fichier avec rotation, ou None si le disque est inaccessible."""
    try:
        LOGS_DIR.mkdir(parents=True, exist_ok=True)
        handler = RotatingFileHandler(
            path,
            maxBytes=10 * 1024 * 1024,  # 10 MB
            backupCount=backup_count,
            encoding='utf-8'
        )
    except OSError:
        return None
    handler.setLevel(logging.DEBUG)
    handler.setFormatter(formatter)
    return handler


def setup_logging(level: str = DEFAULT_LOG_LEVEL) -> logging.Logger:
    """
    Configure le système de logging pour l'application.

    Peut être appelée plusieurs fois (les handlers existants sont remplacés).

    Args:
        level: Niveau de log de la console ('DEBUG', 'INFO', ...)

    Returns:
        Logger principal de l'application
    """
    log_format = logging.Formatter(fmt=LOG_FORMAT, datefmt=LOG_DATE_FORMAT)
    console_level = getattr(logging, level.upper(), logging.INFO)

    # ========================================================================
    # Logger principal de l'application
    # ========================================================================
    app_logger = logging.getLogger(APP_NAME)
    app_logger.setLevel(logging.DEBUG)
    app_logger.propagate = False
    app_logger.handlers.clear()

    # Handler console (stderr: stdout est réservé aux résultats des commandes)
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(console_level)
    console_handler.setFormatter(log_format)
    app_logger.addHandler(console_handler)

    file_handler = _file_handler(APP_LOG_FILE, 5, log_format)
    if file_handler is not None:
        app_logger.addHandler(file_handler)

    # ========================================================================
    # Logger des contre-exemples (séparé)
    # ========================================================================
    verification_logger = logging.getLogger(f'{APP_NAME}.verification')
    verification_logger.setLevel(logging.INFO)
    verification_logger.propagate = False
    verification_logger.handlers.clear()

    verification_handler = _file_handler(VERIFICATION_LOG_FILE, 10, log_format)
    if verification_handler is not None:
        verification_handler.setLevel(logging.INFO)
        verification_logger.addHandler(verification_handler)
    verification_logger.addHandler(console_handler)  # Aussi sur console

    if file_handler is None:
        app_logger.warning(f"Logs fichier désactivés: répertoire {LOGS_DIR} inaccessible")

    # ========================================================================
    # Réduire le bruit des librairies externes
    # ========================================================================
    logging.getLogger('joblib').setLevel(logging.WARNING)

    return app_logger


def get_logger(name: str = APP_NAME) -> logging.Logger:
    """
    Récupère un logger configuré.

    Args:
        name: Nom du logger (par défaut: 'hk_consensus')

    Returns:
        Logger configuré
    """
    return logging.getLogger(name)


def get_verification_logger() -> logging.Logger:
    """
    Récupère le logger des contre-exemples de vérification.

    Returns:
        Logger de vérification
    """
    return logging.getLogger(f'{APP_NAME}.verification')
