from .scoring import SCORING_KINDS, ScoringFunction, score_candidates
from .run import (
    Candidate,
    CandidateBatch,
    EnsembleReport,
    RunConfig,
    RunResult,
    Trace,
    TraceStep,
    run_recursive,
    run_step,
)
from .seeds import maxmin_select
from .session import Session

__all__ = [
    "Candidate",
    "CandidateBatch",
    "EnsembleReport",
    "RunConfig",
    "RunResult",
    "SCORING_KINDS",
    "ScoringFunction",
    "Session",
    "Trace",
    "TraceStep",
    "maxmin_select",
    "run_recursive",
    "run_step",
    "score_candidates",
]
