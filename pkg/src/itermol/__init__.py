"""itermol: recursive translation engine for molecular sequence optimization.

Molecules are written in a restricted bracketed token grammar whose
decoder guarantees valence-valid graphs. A black-box translation model
maps a compound to improved neighbors; feeding each step's best output
back into the model and ensembling every intermediate candidate turns
one trained translator into an optimizer. The package provides the
grammar and chemistry metrics, a trainable reference translator plus a
wire protocol for external models, deterministic and stochastic
decoders, the recursive engine with traces and breakpoints, and a CLI
and HTTP service on top.
"""

__version__ = "0.1.0"

from . import chem, decoding, engine, stats, translate  # noqa: F401
from .chem import (  # noqa: F401
    ALPHABET,
    EOS,
    MolGraph,
    PropertyOracle,
    decode,
    diversity,
    levenshtein,
    molecular_weight,
    morgan_fingerprint,
    penalized_logp,
    qed_surrogate,
    render,
    ring_info,
    tanimoto,
    tokenize,
)
from .corpus import synthetic_corpus  # noqa: F401
from .decoding import DecodeSpec, ScoredSequence, decode_beam, decode_greedy, decode_topk  # noqa: F401
from .engine import (  # noqa: F401
    RunConfig,
    ScoringFunction,
    Session,
    maxmin_select,
    run_recursive,
    run_step,
    score_candidates,
)
from .stats import spearman  # noqa: F401
from .translate import (  # noqa: F401
    ConditionalModel,
    EchoModel,
    PairConstraint,
    ProcessAdapter,
    ReferenceTranslator,
    build_pairs,
    train_reference,
)
