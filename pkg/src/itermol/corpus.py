"""Deterministic synthetic corpus of token-string molecules.

Families span a smooth gradient of the lipophilicity surrogate (plain,
substituted, capped, branched, ring-closed, and unsaturated carbon
skeletons), so similarity-constrained pair construction finds plenty of
improving neighbors and quantile buckets of the property correlate with
molecular size. Generation is seeded and order-stable: the same (size,
seed) always yields the same corpus.
"""

import random

from .chem.tokens import render, tokenize
from .rng import substream

DEFAULT_SIZE = 360
DEFAULT_SEED = 11

_HETERO = ("[O]", "[N]", "[S]")
_HALOGEN = ("[F]", "[Cl]", "[Br]")


def _chain(k: int) -> list[str]:
    return ["[C]"] * k


def synthetic_corpus(size: int = DEFAULT_SIZE, seed: int = DEFAULT_SEED) -> list[str]:
    """Surface strings of `size` distinct molecules."""
    molecules: list[str] = []
    seen: set[str] = set()

    def add(tokens) -> None:
        text = render(tokens)
        if text not in seen:
            seen.add(text)
            molecules.append(text)

    # plain carbon chains
    for k in range(1, 15):
        add(_chain(k))
    # carbon rings; oversize rings are penalized, giving a non-size lever
    for k in range(3, 11):
        add(_chain(k) + [f"[Ring{k - 1}]"])
    # single heteroatom substitutions at a few positions
    for k in range(2, 13):
        for position in sorted({1, k // 2, k - 1}):
            for hetero in _HETERO:
                tokens = _chain(k)
                tokens[position] = hetero
                add(tokens)
    # halogen-capped chains
    for k in range(1, 11):
        for halogen in _HALOGEN:
            add(_chain(k) + [halogen])
    # one methyl branch
    for a in range(1, 7):
        for b in range(1, 7):
            add(_chain(a) + ["[Branch1]", "[C]"] + _chain(b))
    # one double bond
    for k in range(2, 11):
        add(["[C]", "[=]"] + _chain(k - 1))

    rng = random.Random(substream(seed, "corpus"))
    while len(molecules) < size:
        k = rng.randint(2, 14)
        tokens = _chain(k)
        for _ in range(rng.randint(0, 2)):
            position = rng.randrange(1, k)
            tokens[position] = rng.choice(_HETERO + _HALOGEN + ("[C]", "[C]"))
        if rng.random() < 0.25:
            tokens.insert(rng.randrange(1, len(tokens)), "[=]")
        if rng.random() < 0.2 and k >= 4:
            tokens += [f"[Ring{min(k - 1, 9)}]"]
        if rng.random() < 0.25:
            tokens += ["[Branch1]", rng.choice(("[C]", "[O]", "[F]"))]
        add(tokens)

    corpus = molecules[:size]
    for text in corpus:
        tokenize(text)  # alphabet check; decoding is total by construction
    return corpus
