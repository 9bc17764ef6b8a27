"""Similarity-constrained training pair construction.

A pair (source, target) is accepted when the two molecules are similar
enough (Tanimoto above tau), the target strictly improves the oracle
property, and, for the banded variant, both property values fall inside
their configured ranges. Candidate index pairs are visited in a
seed-shuffled order so corpora are reproducible.
"""

import json
import random
from dataclasses import dataclass
from pathlib import Path

from ..chem.fingerprint import morgan_fingerprint, tanimoto
from ..chem.graph import decode
from ..chem.properties import PropertyOracle
from ..chem.tokens import render, tokenize
from ..errors import NoPairsFoundError
from ..rng import substream


@dataclass(frozen=True)
class PairConstraint:
    oracle: PropertyOracle
    tau: float | None = None
    radius: int = 2
    source_band: tuple[float, float] | None = None
    target_band: tuple[float, float] | None = None

    def __post_init__(self):
        if self.tau is not None and not 0.0 < self.tau < 1.0:
            raise ValueError(f"tau must be in (0, 1), got {self.tau}")


@dataclass(frozen=True)
class TranslationPair:
    source: tuple[str, ...]
    target: tuple[str, ...]
    sim: float
    gain: float


def _in_band(value: float, band: tuple[float, float] | None) -> bool:
    return band is None or band[0] <= value <= band[1]


def build_pairs(corpus, constraint: PairConstraint, budget: int, seed: int):
    """Sample accepted pairs from a corpus of token sequences.

    Stops at `budget` accepted pairs or at exhaustion of all ordered
    index pairs; raises NoPairsFoundError when nothing qualifies.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    sequences = [tuple(seq) for seq in corpus]
    graphs = [decode(seq) for seq in sequences]
    values = [constraint.oracle.raw(g) for g in graphs]
    fps = [morgan_fingerprint(g, constraint.radius) for g in graphs]

    indices = [
        (i, j)
        for i in range(len(sequences))
        for j in range(len(sequences))
        if i != j
    ]
    random.Random(substream(seed, "pairs")).shuffle(indices)

    accepted: list[TranslationPair] = []
    for i, j in indices:
        gain = values[j] - values[i]
        if gain <= 0.0:
            continue
        if not _in_band(values[i], constraint.source_band):
            continue
        if not _in_band(values[j], constraint.target_band):
            continue
        sim = tanimoto(fps[i], fps[j])
        if constraint.tau is not None and sim <= constraint.tau:
            continue
        accepted.append(TranslationPair(sequences[i], sequences[j], sim, gain))
        if len(accepted) == budget:
            break
    if not accepted:
        raise NoPairsFoundError("no pair satisfies the constraint")
    return accepted


def save_pairs(path, pairs) -> None:
    lines = []
    for p in pairs:
        lines.append(
            json.dumps(
                {"src": render(p.source), "tgt": render(p.target), "sim": p.sim, "gain": p.gain},
                sort_keys=True,
            )
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_pairs(path) -> list[TranslationPair]:
    pairs = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        row = json.loads(line)
        pairs.append(
            TranslationPair(tokenize(row["src"]), tokenize(row["tgt"]), row["sim"], row["gain"])
        )
    return pairs
