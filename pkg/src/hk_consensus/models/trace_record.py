# src/hk_consensus/models/trace_record.py
# Modèle Pydantic d'une ligne de trace (résumé du graphe d'opinions à un pas)

from typing import List, Optional

from pydantic import BaseModel, Field


class TraceRecord(BaseModel):
    """
    Résumé de G(t) à un pas t d'une trajectoire.

    connected est vrai si et seulement si cluster_count vaut 1.
    """
    t: int = Field(ge=0)
    opinions: Optional[List[float]] = None
    connected: bool
    cluster_count: int = Field(ge=1)
    max_gap: float = Field(ge=0.0)
