"""Black-box translation model contract.

A conditional model maps a source token sequence to target sequences and
is consumed through one of two modes:

* token-level: `next_token_dist(source, prefix)` returns a probability
  distribution over the model's vocabulary (end-of-sequence marker
  included), letting the engine drive any decoding strategy;
* sequence-level: `generate(source, n, seed)` returns n complete
  candidate sequences, for models whose decoding is internal (e.g.
  latent-variable samplers reached over the wire adapter).
"""

from ..chem.tokens import VOCABULARY
from ..errors import ModeMismatchError

TOKEN_LEVEL = "token-level"
SEQUENCE_LEVEL = "sequence-level"


class ConditionalModel:
    """Base class; subclasses override the method matching their mode."""

    vocabulary: tuple[str, ...] = VOCABULARY
    mode: str = TOKEN_LEVEL

    def next_token_dist(self, source, prefix):
        raise ModeMismatchError(f"{type(self).__name__} is not token-level")

    def generate(self, source, n: int, seed: int):
        raise ModeMismatchError(f"{type(self).__name__} is not sequence-level")


class EchoModel(ConditionalModel):
    """Sequence-level model that returns its source unchanged.

    Useful as a protocol demo and as the degenerate fixed point of the
    recursion: every step reproduces the seed.
    """

    mode = SEQUENCE_LEVEL

    def generate(self, source, n: int, seed: int):
        return [tuple(source) for _ in range(n)]
