"""Decoding strategies over token-level conditional models.

All strategies share one termination and scoring rule: a sequence ends
when the end-of-sequence symbol is selected, or is force-terminated at
max_length, and its log-likelihood is the sum of the emitted token
log-probabilities plus the final end-of-sequence log-probability. The
forced stop therefore scores exactly like a natural stop, and
``rescore`` reproduces any returned score independently of the strategy
that produced it.

Ties are broken by vocabulary order everywhere, and stochastic samples
draw from independent substreams keyed by sample index, so results are
reproducible and order-independent.
"""

import math
import random
from dataclasses import dataclass

from .chem.tokens import EOS
from .errors import NoCompletedError
from .rng import substream

DEFAULT_MAX_LENGTH = 120

GREEDY = "greedy"
BEAM = "beam"
TOP_K = "top-k"


@dataclass(frozen=True)
class DecodeSpec:
    """Configuration for one decoding strategy.

    count (greedy) duplicates the deterministic output so budget
    accounting matches stochastic strategies candidate-for-candidate.
    """

    strategy: str
    max_length: int = DEFAULT_MAX_LENGTH
    count: int = 1
    width: int = 1
    num_returned: int = 1
    k: int = 1
    num_samples: int = 1
    seed: int | None = None
    length_normalize: bool = False

    def __post_init__(self):
        problems = []
        if self.strategy not in (GREEDY, BEAM, TOP_K):
            problems.append(f"unknown strategy {self.strategy!r}")
        if self.max_length < 1:
            problems.append("max_length must be >= 1")
        if self.strategy == GREEDY and self.count < 1:
            problems.append("count must be >= 1")
        if self.strategy == BEAM:
            if self.width < 1:
                problems.append("width must be >= 1")
            if not 1 <= self.num_returned <= self.width:
                problems.append("num_returned must be in [1, width]")
        if self.strategy == TOP_K:
            if self.k < 1:
                problems.append("k must be >= 1")
            if self.num_samples < 1:
                problems.append("num_samples must be >= 1")
        if problems:
            raise ValueError("; ".join(problems))

    @property
    def samples(self) -> int:
        """Candidates this spec produces per invocation."""
        if self.strategy == GREEDY:
            return self.count
        if self.strategy == BEAM:
            return self.num_returned
        return self.num_samples

    @staticmethod
    def greedy(count: int = 1, max_length: int = DEFAULT_MAX_LENGTH) -> "DecodeSpec":
        return DecodeSpec(GREEDY, max_length=max_length, count=count)

    @staticmethod
    def beam(
        width: int, num_returned: int, max_length: int = DEFAULT_MAX_LENGTH
    ) -> "DecodeSpec":
        return DecodeSpec(BEAM, max_length=max_length, width=width, num_returned=num_returned)

    @staticmethod
    def topk(
        k: int,
        num_samples: int,
        seed: int | None = None,
        max_length: int = DEFAULT_MAX_LENGTH,
    ) -> "DecodeSpec":
        return DecodeSpec(TOP_K, max_length=max_length, k=k, num_samples=num_samples, seed=seed)

    def to_dict(self) -> dict:
        d = {"strategy": self.strategy, "max_length": self.max_length}
        if self.strategy == GREEDY:
            d["count"] = self.count
        elif self.strategy == BEAM:
            d["width"] = self.width
            d["num_returned"] = self.num_returned
            if self.length_normalize:
                d["length_normalize"] = True
        else:
            d["k"] = self.k
            d["num_samples"] = self.num_samples
            if self.seed is not None:
                d["seed"] = self.seed
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "DecodeSpec":
        return cls(
            strategy=data["strategy"],
            max_length=data.get("max_length", DEFAULT_MAX_LENGTH),
            count=data.get("count", 1),
            width=data.get("width", 1),
            num_returned=data.get("num_returned", 1),
            k=data.get("k", 1),
            num_samples=data.get("num_samples", 1),
            seed=data.get("seed"),
            length_normalize=data.get("length_normalize", False),
        )


@dataclass(frozen=True)
class ScoredSequence:
    tokens: tuple[str, ...]
    log_likelihood: float


def _log(p: float) -> float:
    return math.log(p) if p > 0.0 else float("-inf")


def decode_greedy(model, source, max_length: int = DEFAULT_MAX_LENGTH) -> ScoredSequence:
    """Left-to-right argmax decode; vocabulary order breaks ties."""
    vocab = model.vocabulary
    eos_index = vocab.index(EOS)
    prefix: list[str] = []
    score = 0.0
    while True:
        dist = model.next_token_dist(source, tuple(prefix))
        if len(prefix) == max_length:
            score += _log(dist[eos_index])
            break
        best = max(range(len(vocab)), key=lambda i: (dist[i], -i))
        score += _log(dist[best])
        if best == eos_index:
            break
        prefix.append(vocab[best])
    return ScoredSequence(tuple(prefix), score)


def _token_key(tokens, vocab_index):
    return tuple(vocab_index[t] for t in tokens)


def decode_beam(
    model,
    source,
    width: int,
    num_returned: int,
    max_length: int = DEFAULT_MAX_LENGTH,
    length_normalize: bool = False,
) -> list[ScoredSequence]:
    """Length-unnormalized beam search returning completed hypotheses.

    End-symbol extensions compete for beam slots like any token; a
    hypothesis that wins a slot with the end symbol retires to the
    completed pool (so beam width 1 collapses exactly to greedy search).
    At max_length the survivors are force-terminated. Raises
    NoCompletedError when nothing reaches the end with finite likelihood.
    """
    if not 1 <= num_returned <= width:
        raise ValueError("need 1 <= num_returned <= width")
    vocab = model.vocabulary
    vocab_index = {t: i for i, t in enumerate(vocab)}
    eos_index = vocab.index(EOS)

    active: list[tuple[tuple[str, ...], float]] = [((), 0.0)]
    completed: list[tuple[tuple[str, ...], float]] = []
    for step in range(max_length + 1):
        pool: list[tuple[tuple[str, ...], float, bool]] = []
        for tokens, score in active:
            dist = model.next_token_dist(source, tokens)
            if step == max_length:
                final = score + _log(dist[eos_index])
                if final > float("-inf"):
                    completed.append((tokens, final))
                continue
            for i, p in enumerate(dist):
                extended = score + _log(p)
                if extended == float("-inf"):
                    continue
                if i == eos_index:
                    pool.append((tokens, extended, True))
                else:
                    pool.append((tokens + (vocab[i],), extended, False))
        if step == max_length or not pool:
            break

        def prune_key(h):
            tokens, score, finished = h
            emission = _token_key(tokens, vocab_index)
            if finished:
                emission = emission + (eos_index,)
            return (-score, emission)

        pool.sort(key=prune_key)
        active = []
        for tokens, score, finished in pool[:width]:
            if finished:
                completed.append((tokens, score))
            else:
                active.append((tokens, score))
        if not active:
            break

    if not completed:
        raise NoCompletedError("no hypothesis reached the end symbol")

    def final_key(h):
        tokens, score = h
        ranking = score / (len(tokens) + 1) if length_normalize else score
        return (-ranking, _token_key(tokens, vocab_index))

    completed.sort(key=final_key)
    return [ScoredSequence(t, s) for t, s in completed[:num_returned]]


def decode_topk(
    model,
    source,
    k: int,
    num_samples: int,
    seed: int,
    max_length: int = DEFAULT_MAX_LENGTH,
    trace_sink: list | None = None,
) -> list[ScoredSequence]:
    """Sample sequences restricted to the k most probable tokens per step.

    Each sample uses an independent substream of `seed`, so results are
    reproducible and unaffected by evaluation order. `trace_sink`, when
    given, receives (sample, step, allowed_tokens, chosen) tuples.
    """
    vocab = model.vocabulary
    if not 1 <= k <= len(vocab):
        raise ValueError(f"k must be in [1, {len(vocab)}], got {k}")
    eos_index = vocab.index(EOS)
    out = []
    for sample in range(num_samples):
        rng = random.Random(substream(seed, "top-k", sample))
        prefix: list[str] = []
        score = 0.0
        while True:
            dist = model.next_token_dist(source, tuple(prefix))
            if len(prefix) == max_length:
                score += _log(dist[eos_index])
                break
            ranked = sorted(range(len(vocab)), key=lambda i: (-dist[i], i))[:k]
            mass = sum(dist[i] for i in ranked)
            if mass <= 0.0:
                # degenerate row: nothing to sample, terminate as forced end
                score += _log(dist[eos_index])
                break
            draw = rng.random() * mass
            chosen = ranked[-1]
            acc = 0.0
            for i in ranked:
                acc += dist[i]
                if draw < acc:
                    chosen = i
                    break
            if trace_sink is not None:
                trace_sink.append(
                    (sample, len(prefix), tuple(vocab[i] for i in ranked), vocab[chosen])
                )
            score += _log(dist[chosen])
            if chosen == eos_index:
                break
            prefix.append(vocab[chosen])
        out.append(ScoredSequence(tuple(prefix), score))
    return out


def run_decode(model, source, spec: DecodeSpec, seed: int | None = None) -> list[ScoredSequence]:
    """Dispatch a DecodeSpec; `seed` overrides the spec's own seed."""
    if spec.strategy == GREEDY:
        result = decode_greedy(model, source, spec.max_length)
        return [result] * spec.count
    if spec.strategy == BEAM:
        return decode_beam(
            model,
            source,
            spec.width,
            spec.num_returned,
            spec.max_length,
            spec.length_normalize,
        )
    effective = seed if seed is not None else spec.seed
    if effective is None:
        raise ValueError("top-k decoding needs a seed")
    return decode_topk(
        model, source, spec.k, spec.num_samples, effective, spec.max_length
    )


def rescore(model, source, tokens) -> float:
    """Independent log-likelihood of a token sequence, end emission included."""
    vocab = model.vocabulary
    index = {t: i for i, t in enumerate(vocab)}
    tokens = tuple(tokens)
    total = 0.0
    for t in range(len(tokens) + 1):
        dist = model.next_token_dist(source, tokens[:t])
        symbol = tokens[t] if t < len(tokens) else EOS
        total += _log(dist[index[symbol]])
    return total
