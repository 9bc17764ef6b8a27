"""Ranking of candidate batches: which output becomes the next source.

Each kind induces a total order over a batch; directionality is
normalized internally (molecular weight is minimized, everything else
maximized) and ties go to the lowest candidate index, so the choice is
deterministic for any batch.
"""

from dataclasses import dataclass

from ..errors import MissingReferenceError

PENALIZED_LOGP = "penalized-logp"
QED = "qed"
MAX_DELTA_SIM = "max-delta-sim"
MAX_INIT_SIM = "max-init-sim"
MIN_MOL_WT = "min-mol-wt"
LOG_LIKELIHOOD = "log-likelihood"

SCORING_KINDS = (
    PENALIZED_LOGP,
    QED,
    MAX_DELTA_SIM,
    MAX_INIT_SIM,
    MIN_MOL_WT,
    LOG_LIKELIHOOD,
)

_PROPERTY_KEY = {
    PENALIZED_LOGP: "penalized-logp",
    QED: "qed",
    MAX_DELTA_SIM: "sim-previous",
    MAX_INIT_SIM: "sim-initial",
    MIN_MOL_WT: "molecular-weight",
}


@dataclass(frozen=True)
class ScoringFunction:
    kind: str

    def __post_init__(self):
        if self.kind not in SCORING_KINDS:
            raise ValueError(f"unknown scoring kind {self.kind!r}")

    def key(self, candidate) -> float:
        """Direction-normalized criterion value (always maximized)."""
        if self.kind == LOG_LIKELIHOOD:
            if candidate.log_likelihood is None:
                raise MissingReferenceError(
                    "candidate has no log-likelihood (sequence-level model)"
                )
            return candidate.log_likelihood
        prop = _PROPERTY_KEY[self.kind]
        try:
            value = candidate.properties[prop]
        except KeyError as exc:
            raise MissingReferenceError(f"candidate missing {prop!r}") from exc
        return -value if self.kind == MIN_MOL_WT else value


def score_candidates(batch, scoring: ScoringFunction) -> int:
    """Index of the batch winner under the scoring function."""
    candidates = batch.candidates
    if not candidates:
        raise ValueError("cannot score an empty batch")
    return max(range(len(candidates)), key=lambda i: (scoring.key(candidates[i]), -i))
