# src/hk_consensus/models/estimate_record.py
# Modèle Pydantic d'une cellule de Monte Carlo (n, epsilon)

from typing import Optional

from pydantic import BaseModel, Field, model_validator

from hk_consensus.core.constants import GENERATOR_NAME


class EstimateRecord(BaseModel):
    """
    Estimation d'une fréquence sur une cellule (n, epsilon) de la grille.

    successes compte les essais où l'événement estimé est observé; les essais
    non convergés sont comptés à part et exclus de successes.
    """
    n: int = Field(ge=1)
    epsilon: float
    trials: int = Field(ge=1)
    successes: int = Field(ge=0)
    nonconverged: int = Field(default=0, ge=0)
    p_hat: float
    ci_low: float
    ci_high: float
    mean_steps: Optional[float] = None
    master_seed: int
    reference_bound: Optional[float] = None
    generator: str = GENERATOR_NAME

    @model_validator(mode="after")
    def check_interval(self) -> "EstimateRecord":
        if self.successes + self.nonconverged > self.trials:
            raise ValueError("successes + nonconverged dépasse trials")
        if not 0.0 <= self.ci_low <= self.p_hat <= self.ci_high <= 1.0:
            raise ValueError(
                f"Intervalle incohérent: {self.ci_low} <= {self.p_hat} <= {self.ci_high}"
            )
        return self

    @property
    def half_width(self) -> float:
        """Demi-largeur de l'intervalle de confiance."""
        return (self.ci_high - self.ci_low) / 2
