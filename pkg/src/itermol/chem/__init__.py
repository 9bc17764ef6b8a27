from .tokens import (
    ALPHABET,
    ATOM_TOKENS,
    ATOM_VALENCE,
    BOND_MODIFIER_TOKENS,
    BRANCH_TOKENS,
    EOS,
    MAX_SEQUENCE_TOKENS,
    RING_TOKENS,
    VOCABULARY,
    levenshtein,
    render,
    tokenize,
)
from .graph import (
    ATOMIC_WEIGHT,
    Atom,
    DecodeResult,
    HYDROGEN_WEIGHT,
    MolGraph,
    decode,
    decode_with_diagnostics,
    molecular_weight,
    ring_info,
)
from .fingerprint import (
    Fingerprint,
    diversity,
    diversity_from_fingerprints,
    morgan_fingerprint,
    tanimoto,
)
from .properties import (
    MOLECULAR_WEIGHT,
    PENALIZED_LOGP,
    PropertyOracle,
    QED_SURROGATE,
    fit_normalization,
    make_oracle,
    penalized_logp,
    population_stats,
    qed_surrogate,
)

__all__ = [
    "ALPHABET",
    "ATOM_TOKENS",
    "ATOM_VALENCE",
    "ATOMIC_WEIGHT",
    "Atom",
    "BOND_MODIFIER_TOKENS",
    "BRANCH_TOKENS",
    "DecodeResult",
    "EOS",
    "Fingerprint",
    "HYDROGEN_WEIGHT",
    "MAX_SEQUENCE_TOKENS",
    "MOLECULAR_WEIGHT",
    "MolGraph",
    "PENALIZED_LOGP",
    "PropertyOracle",
    "QED_SURROGATE",
    "RING_TOKENS",
    "VOCABULARY",
    "decode",
    "decode_with_diagnostics",
    "diversity",
    "diversity_from_fingerprints",
    "fit_normalization",
    "levenshtein",
    "make_oracle",
    "molecular_weight",
    "morgan_fingerprint",
    "penalized_logp",
    "population_stats",
    "qed_surrogate",
    "render",
    "ring_info",
    "tanimoto",
]
