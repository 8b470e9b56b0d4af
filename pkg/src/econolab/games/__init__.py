"""Repeated-game models: the minority-game family and the Kolkata
Paise Restaurant problem."""

from econolab.games.minority import (
    AdaptiveMGConfig,
    EvolutionaryMGConfig,
    MGConfig,
    MGResult,
    mg_step,
    run_adaptive_mg,
    run_evolutionary_mg,
    run_mg,
)
from econolab.games.kpr import (
    CrowdAvoiding,
    Dictator,
    KPRResult,
    RankStochastic,
    kpr_analytic_utilization,
    kpr_step,
    run_kpr,
)

__all__ = [
    "MGConfig",
    "EvolutionaryMGConfig",
    "AdaptiveMGConfig",
    "MGResult",
    "mg_step",
    "run_mg",
    "run_evolutionary_mg",
    "run_adaptive_mg",
    "RankStochastic",
    "CrowdAvoiding",
    "Dictator",
    "KPRResult",
    "kpr_step",
    "run_kpr",
    "kpr_analytic_utilization",
]
