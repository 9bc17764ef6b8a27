"""Surrogate property oracles used for pair construction, scoring, reporting.

The constant tables below are artifact constants, chosen for monotone,
interpretable structural levers rather than to reproduce any published
property model: hydrophobic atoms raise the lipophilicity surrogate,
heteroatoms lower it, and size/branching/ring terms penalize it; the
drug-likeness surrogate peaks for mid-size, moderately lipophilic
molecules with about two rings. Appending one carbon to an unbranched
acyclic chain raises the lipophilicity surrogate by exactly +0.45.
"""

import math
from dataclasses import dataclass, replace

from ..errors import DegenerateCorpusError, EmptyGraphError, WrongOracleError
from .graph import MolGraph, molecular_weight, ring_info

PENALIZED_LOGP = "penalized-logp-surrogate"
QED_SURROGATE = "qed-surrogate"
MOLECULAR_WEIGHT = "molecular-weight"

ORACLE_NAMES = (PENALIZED_LOGP, QED_SURROGATE, MOLECULAR_WEIGHT)

LOGP_WEIGHTS = {
    "carbon": 0.5,
    "hydrophobic_hetero": 0.3,  # S, Cl, Br
    "polar_hetero": 0.6,  # N, O
    "fluorine": 0.2,
    "per_atom": 0.05,
    "per_branch_point": 0.3,
    "per_ring": 0.2,
}

# (center, width) of the desirability gaussians: weight, raw logP, ring count.
QED_TARGETS = {
    "molecular_weight": (300.0, 150.0),
    "logp_raw": (2.5, 2.0),
    "ring_count": (2.0, 1.5),
}


@dataclass(frozen=True)
class PropertyOracle:
    """Named, deterministic property evaluator with optional normalization."""

    name: str
    normalization: tuple[float, float] | None = None

    def __post_init__(self):
        if self.name not in ORACLE_NAMES:
            raise WrongOracleError(f"unknown oracle {self.name!r}")
        if self.normalization is not None and self.normalization[1] <= 0:
            raise ValueError("normalization stddev must be > 0")

    @property
    def parameters(self) -> dict:
        if self.name == PENALIZED_LOGP:
            return dict(LOGP_WEIGHTS)
        if self.name == QED_SURROGATE:
            return {k: list(v) for k, v in QED_TARGETS.items()}
        return {"hydrogen": 1.008}

    def raw(self, g: MolGraph) -> float:
        if self.name == PENALIZED_LOGP:
            return penalized_logp(g, replace(self, normalization=None))
        if self.name == QED_SURROGATE:
            return qed_surrogate(g, self)
        return molecular_weight(g)

    def score(self, g: MolGraph) -> float:
        value = self.raw(g)
        if self.normalization is not None:
            mean, std = self.normalization
            return (value - mean) / std
        return value

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "normalization": list(self.normalization) if self.normalization else None,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PropertyOracle":
        norm = data.get("normalization")
        return cls(data["name"], tuple(norm) if norm else None)


def make_oracle(name: str) -> PropertyOracle:
    return PropertyOracle(name)


def _require(oracle: PropertyOracle, name: str) -> None:
    if oracle.name != name:
        raise WrongOracleError(f"expected {name!r} oracle, got {oracle.name!r}")


def penalized_logp(g: MolGraph, oracle: PropertyOracle) -> float:
    """Lipophilicity surrogate penalized by size, branching, and large rings.

    raw = hydrophobic - heteroatom - accessibility - oversize ring terms;
    returns (raw - mean) / stddev when the oracle carries normalization.
    """
    _require(oracle, PENALIZED_LOGP)
    w = LOGP_WEIGHTS
    counts = {"C": 0, "S": 0, "Cl": 0, "Br": 0, "N": 0, "O": 0, "F": 0}
    for atom in g.atoms:
        counts[atom.element] += 1
    branch_points = sum(1 for i in range(len(g.atoms)) if g.degree(i) >= 3)
    rings = ring_info(g)

    hydrophobic = w["carbon"] * counts["C"] + w["hydrophobic_hetero"] * (
        counts["S"] + counts["Cl"] + counts["Br"]
    )
    heteroatom = w["polar_hetero"] * (counts["N"] + counts["O"]) + w["fluorine"] * counts["F"]
    accessibility = (
        w["per_atom"] * len(g.atoms)
        + w["per_branch_point"] * branch_points
        + w["per_ring"] * len(rings)
    )
    oversize = sum(max(0, size - 6) for size in rings)
    raw = hydrophobic - heteroatom - accessibility - oversize
    if oracle.normalization is not None:
        mean, std = oracle.normalization
        return (raw - mean) / std
    return raw


def gaussian_desirability(value: float, center: float, width: float) -> float:
    return math.exp(-((value - center) ** 2) / (2.0 * width * width))


def qed_surrogate(g: MolGraph, oracle: PropertyOracle) -> float:
    """Drug-likeness surrogate in (0, 1]: geometric mean of three gaussians."""
    _require(oracle, QED_SURROGATE)
    if len(g.atoms) == 0:
        raise EmptyGraphError("drug-likeness surrogate needs a non-empty graph")
    logp_raw = penalized_logp(g, PropertyOracle(PENALIZED_LOGP))
    values = {
        "molecular_weight": molecular_weight(g),
        "logp_raw": logp_raw,
        "ring_count": float(len(ring_info(g))),
    }
    log_sum = 0.0
    for key, (center, width) in QED_TARGETS.items():
        log_sum += math.log(gaussian_desirability(values[key], center, width))
    return math.exp(log_sum / len(QED_TARGETS))


def population_stats(values) -> tuple[float, float]:
    """(mean, population stddev) of a value list; stddev 0 allowed."""
    values = list(values)
    mean = sum(values) / len(values)
    variance = sum((v - mean) ** 2 for v in values) / len(values)
    return mean, math.sqrt(variance)


def fit_normalization(corpus, oracle: PropertyOracle) -> PropertyOracle:
    """Attach (mean, population stddev) of raw scores over a corpus of graphs."""
    corpus = list(corpus)
    if len(corpus) < 2:
        raise DegenerateCorpusError("normalization corpus needs at least 2 graphs")
    mean, std = population_stats(oracle.raw(g) for g in corpus)
    if std == 0.0:
        raise DegenerateCorpusError("corpus raw scores have zero variance")
    return replace(oracle, normalization=(mean, std))
