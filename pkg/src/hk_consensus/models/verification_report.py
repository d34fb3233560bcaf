# src/hk_consensus/models/verification_report.py
# Modèle Pydantic du rapport d'une suite de propriétés

from typing import Any, Dict, List

from pydantic import BaseModel, Field


class VerificationReport(BaseModel):
    """
    Résultat d'une suite de propriétés.

    violations ne garde que les premiers contre-exemples; violation_count
    compte tous ceux trouvés. La suite est validée si violation_count vaut 0.
    """
    suite: str
    mode: str
    cases: int = Field(ge=0)
    checks: int = Field(default=0, ge=0)
    violation_count: int = Field(default=0, ge=0)
    violations: List[Dict[str, Any]] = Field(default_factory=list)
    seed: int
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return self.violation_count == 0
