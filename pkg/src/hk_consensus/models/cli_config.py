# src/hk_consensus/models/cli_config.py
# Modèle Pydantic de la configuration effective d'une commande

from typing import List, Optional

from pydantic import BaseModel, Field

from hk_consensus.core.constants import (
    DEFAULT_CONSENSUS_TOL, DEFAULT_CONVERGENCE_TOL, DEFAULT_LOG_LEVEL, DEFAULT_MODE,
    DEFAULT_MAX_STEPS, DEFAULT_SEED, DEFAULT_TRIALS
)


class CliConfig(BaseModel):
    """
    Configuration fusionnée (constantes < fichier < environnement < options).

    Les listes n et eps sont déjà développées (plages incluses).
    """
    command: str
    n: List[int] = Field(default_factory=list)
    eps: List[float] = Field(default_factory=list)
    opinions: Optional[List[str]] = None
    trials: int = Field(default=DEFAULT_TRIALS, ge=1)
    seed: int = DEFAULT_SEED
    mode: str = DEFAULT_MODE
    max_steps: int = Field(default=DEFAULT_MAX_STEPS, ge=1)
    convergence_tol: float = Field(default=DEFAULT_CONVERGENCE_TOL, ge=0.0)
    consensus_tol: float = Field(default=DEFAULT_CONSENSUS_TOL, ge=0.0)
    threads: Optional[int] = Field(default=None, ge=1)
    suite: str = "all"
    cases: int = Field(default=1000, ge=0)
    asynchronous: bool = False
    trace: Optional[str] = None
    trace_opinions: bool = False
    output: Optional[str] = None
    log_level: str = DEFAULT_LOG_LEVEL
    config_file: Optional[str] = None

    def metadata_view(self) -> dict:
        """Configuration écrite dans les métadonnées des sorties (sans les réglages d'exécution)."""
        return self.model_dump(exclude={"threads", "log_level", "output", "trace", "config_file"})
