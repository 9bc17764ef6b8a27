"""Self-contained reference translator trained by count-and-normalize.

The model conditions each target token on a coarse source summary plus
the local target context: (source property quantile bucket, previous
target token, capped position relative to the source length). Training
tallies transition counts over that context, which is the closed-form
likelihood maximum for the model family; additive smoothing keeps every
probability positive, so held-out likelihoods are always finite.

The relative-position component encodes the local-edit structure of the
training pairs (targets end near their source's length plus a small
excess) and is what lets the model extrapolate to sources longer than
anything in the corpus: without it, deterministic decoding follows a
position-independent argmax cycle and either stops immediately or never
stops, and generation length is pinned to corpus sizes.

Contexts never seen in training back off to the pooled
position-marginal row (counts aggregated over buckets and previous
tokens at the same relative position), so generation keeps terminating
with trained end-of-sequence mass instead of drifting through uniform
rows to the length cap; a position seen nowhere at all yields the plain
uniform smoothed row.
"""

import bisect
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from ..chem.graph import decode
from ..chem.properties import PropertyOracle
from ..chem.tokens import EOS, VOCABULARY
from ..errors import EmptyTrainingError
from .base import ConditionalModel, TOKEN_LEVEL

BOS = "<start>"

DEFAULT_ALPHA = 0.1
DEFAULT_BUCKETS = 8
DEFAULT_POSITION_CAP = 8

FORMAT = "itermol-reference-translator-v1"


@dataclass
class ReferenceTranslator(ConditionalModel):
    """Token-level conditional model backed by smoothed transition counts."""

    oracle: PropertyOracle
    alpha: float = DEFAULT_ALPHA
    boundaries: tuple[float, ...] = ()
    position_cap: int = DEFAULT_POSITION_CAP
    counts: dict = field(default_factory=dict)
    position_counts: dict = field(default_factory=dict)
    vocabulary: tuple[str, ...] = VOCABULARY
    mode: str = TOKEN_LEVEL

    def __post_init__(self):
        self._bucket_cache: dict[tuple[str, ...], int] = {}
        self._index = {tok: i for i, tok in enumerate(self.vocabulary)}

    def bucket_of(self, source) -> int:
        """Quantile bucket of the source's property; boundary ties go low."""
        source = tuple(source)
        cached = self._bucket_cache.get(source)
        if cached is not None:
            return cached
        value = self.oracle.raw(decode(source))
        bucket = bisect.bisect_left(list(self.boundaries), value)
        self._bucket_cache[source] = bucket
        return bucket

    def _relative_position(self, position: int, source_length: int) -> int:
        rel = position - source_length
        return max(-self.position_cap, min(self.position_cap, rel))

    def _context(self, bucket: int, prev: str, position: int, source_length: int) -> str:
        rel = self._relative_position(position, source_length)
        return f"{bucket}\t{prev}\t{rel}"

    def next_token_dist(self, source, prefix):
        """Smoothed probability row over the vocabulary for this context."""
        source = tuple(source)
        prefix = tuple(prefix)
        bucket = self.bucket_of(source)
        prev = prefix[-1] if prefix else BOS
        row = self.counts.get(
            self._context(bucket, prev, len(prefix), len(source))
        )
        if row is None:
            rel = self._relative_position(len(prefix), len(source))
            row = self.position_counts.get(str(rel), {})
        total = sum(row.values())
        denom = total + self.alpha * len(self.vocabulary)
        return [
            (row.get(token, 0) + self.alpha) / denom for token in self.vocabulary
        ]

    def sequence_log_likelihood(self, source, target) -> float:
        """log P(target | source), end-of-sequence emission included."""
        source = tuple(source)
        target = tuple(target)
        total = 0.0
        for t in range(len(target) + 1):
            dist = self.next_token_dist(source, target[:t])
            token = target[t] if t < len(target) else EOS
            total += math.log(dist[self._index[token]])
        return total

    # --- persistence ----------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "format": FORMAT,
            "oracle": self.oracle.to_dict(),
            "alpha": self.alpha,
            "boundaries": list(self.boundaries),
            "position_cap": self.position_cap,
            "vocabulary": list(self.vocabulary),
            "counts": self.counts,
            "position_counts": self.position_counts,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ReferenceTranslator":
        if data.get("format") != FORMAT:
            raise ValueError(f"unsupported model format {data.get('format')!r}")
        return cls(
            oracle=PropertyOracle.from_dict(data["oracle"]),
            alpha=data["alpha"],
            boundaries=tuple(data["boundaries"]),
            position_cap=data["position_cap"],
            counts={k: dict(v) for k, v in data["counts"].items()},
            position_counts={
                k: dict(v) for k, v in data.get("position_counts", {}).items()
            },
            vocabulary=tuple(data["vocabulary"]),
        )

    def save(self, path) -> None:
        Path(path).write_text(
            json.dumps(self.to_dict(), sort_keys=True), encoding="utf-8"
        )

    @classmethod
    def load(cls, path) -> "ReferenceTranslator":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def _quantile_boundaries(values, buckets: int) -> tuple[float, ...]:
    ordered = sorted(values)
    n = len(ordered)
    return tuple(ordered[min(n - 1, (k * n) // buckets)] for k in range(1, buckets))


def train_reference(
    pairs,
    oracle: PropertyOracle,
    alpha: float = DEFAULT_ALPHA,
    buckets: int = DEFAULT_BUCKETS,
    position_cap: int = DEFAULT_POSITION_CAP,
) -> ReferenceTranslator:
    """Fit transition counts from translation pairs."""
    pairs = list(pairs)
    if not pairs:
        raise EmptyTrainingError("no training pairs")
    if alpha <= 0:
        raise ValueError("smoothing alpha must be > 0")
    if buckets < 1:
        raise ValueError("bucket count must be >= 1")

    source_values = [oracle.raw(decode(p.source)) for p in pairs]
    model = ReferenceTranslator(
        oracle=oracle,
        alpha=alpha,
        boundaries=_quantile_boundaries(source_values, buckets),
        position_cap=position_cap,
    )
    counts: dict[str, dict[str, int]] = {}
    position_counts: dict[str, dict[str, int]] = {}
    for pair, value in zip(pairs, source_values):
        bucket = bisect.bisect_left(list(model.boundaries), value)
        target = tuple(pair.target)
        source_length = len(pair.source)
        for t in range(len(target) + 1):
            prev = target[t - 1] if t > 0 else BOS
            token = target[t] if t < len(target) else EOS
            context = model._context(bucket, prev, t, source_length)
            row = counts.setdefault(context, {})
            row[token] = row.get(token, 0) + 1
            rel = model._relative_position(t, source_length)
            pooled = position_counts.setdefault(str(rel), {})
            pooled[token] = pooled.get(token, 0) + 1
    model.counts = counts
    model.position_counts = position_counts
    return model
