"""Shared fixtures: a desk-scale corpus/pairs/model world and table models."""

import random
from dataclasses import dataclass

import pytest

from itermol.chem.graph import decode
from itermol.chem.properties import PENALIZED_LOGP, PropertyOracle
from itermol.chem.tokens import EOS, tokenize
from itermol.corpus import synthetic_corpus
from itermol.engine.seeds import maxmin_select
from itermol.rng import substream
from itermol.translate.base import ConditionalModel, TOKEN_LEVEL
from itermol.translate.pairs import PairConstraint, build_pairs
from itermol.translate.reference import train_reference


class FixedTableModel(ConditionalModel):
    """Token-level model with an explicit (prefix -> distribution) table.

    Unlisted prefixes fall back to the `default` row; distributions are
    dicts over vocabulary symbols, missing symbols get probability 0.
    """

    mode = TOKEN_LEVEL

    def __init__(self, vocabulary, table, default=None):
        self.vocabulary = tuple(vocabulary)
        self.table = {tuple(k): dict(v) for k, v in table.items()}
        self.default = dict(default) if default else None

    def next_token_dist(self, source, prefix):
        row = self.table.get(tuple(prefix), self.default)
        if row is None:
            raise KeyError(f"no table row for prefix {tuple(prefix)!r}")
        return [row.get(tok, 0.0) for tok in self.vocabulary]


class RandomTableModel(ConditionalModel):
    """Pseudo-random rows keyed by (source, prefix); termination pressure
    grows with prefix length so decoding always ends well before the cap."""

    mode = TOKEN_LEVEL

    def __init__(self, vocabulary, model_seed, eos_boost=1.0):
        self.vocabulary = tuple(vocabulary)
        self.model_seed = model_seed
        self.eos_boost = eos_boost

    def next_token_dist(self, source, prefix):
        rng = random.Random(
            substream(self.model_seed, tuple(source), tuple(prefix))
        )
        weights = [rng.random() + 1e-9 for _ in self.vocabulary]
        eos_index = self.vocabulary.index(EOS)
        weights[eos_index] *= self.eos_boost * (1.0 + len(prefix) ** 2)
        total = sum(weights)
        return [w / total for w in weights]


class AppendCarbonModel(ConditionalModel):
    """Deterministically translates any source to source + one carbon."""

    mode = TOKEN_LEVEL

    def next_token_dist(self, source, prefix):
        target = tuple(source) + ("[C]",)
        prefix = tuple(prefix)
        expected = target[len(prefix)] if len(prefix) < len(target) else EOS
        return [1.0 if tok == expected else 0.0 for tok in self.vocabulary]


@dataclass
class World:
    corpus: list
    sequences: list
    graphs: list
    oracle: PropertyOracle
    pairs: list
    model: object
    seeds: list


@pytest.fixture(scope="session")
def logp_oracle():
    return PropertyOracle(PENALIZED_LOGP)


@pytest.fixture(scope="session")
def world(logp_oracle):
    """Corpus, accepted pairs, trained reference translator, diverse seeds."""
    corpus = synthetic_corpus(360, 11)
    sequences = [tokenize(text) for text in corpus]
    graphs = [decode(seq) for seq in sequences]
    pairs = build_pairs(
        sequences, PairConstraint(logp_oracle, tau=0.4), budget=4000, seed=1
    )
    model = train_reference(pairs, logp_oracle)
    pool = [i for i in range(len(corpus)) if 4 <= len(sequences[i]) <= 10]
    picked = maxmin_select([graphs[i] for i in pool], 4, 0)
    seeds = [corpus[pool[i]] for i in picked]
    return World(corpus, sequences, graphs, logp_oracle, pairs, model, seeds)
