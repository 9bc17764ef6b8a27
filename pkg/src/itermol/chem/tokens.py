"""Bracketed token grammar for the restricted molecular string alphabet.

A molecule is written as a concatenation of bracketed tokens, e.g.
``"[C][Branch1][O][C]"``. The alphabet holds seven atom tokens, two bond
order modifiers, three branch openers (consuming 1-3 following tokens)
and nine ring-closure tokens with lookback distances 1-9. Every
in-alphabet token string decodes to a valid molecular graph; see
`itermol.chem.graph`.
"""

from ..errors import EmptyInputError, UnknownTokenError

# Element -> maximum valence for the restricted subset.
ATOM_VALENCE = {
    "C": 4,
    "N": 3,
    "O": 2,
    "S": 2,
    "F": 1,
    "Cl": 1,
    "Br": 1,
}

ATOM_TOKENS = tuple(f"[{el}]" for el in ATOM_VALENCE)
BOND_MODIFIER_TOKENS = ("[=]", "[#]")
BRANCH_TOKENS = ("[Branch1]", "[Branch2]", "[Branch3]")
RING_TOKENS = tuple(f"[Ring{i}]" for i in range(1, 10))

ALPHABET = ATOM_TOKENS + BOND_MODIFIER_TOKENS + BRANCH_TOKENS + RING_TOKENS
_ALPHABET_SET = frozenset(ALPHABET)

# End-of-sequence marker used by translation models. Not part of the
# surface alphabet; it never appears inside a rendered molecule string.
EOS = "<end>"
VOCABULARY = ALPHABET + (EOS,)

# Hard cap on sequence length accepted for translation.
MAX_SEQUENCE_TOKENS = 120

TokenSequence = tuple[str, ...]


def atom_element(token: str) -> str:
    return token[1:-1]


def is_atom(token: str) -> bool:
    return token in ATOM_TOKENS


def bond_modifier_order(token: str) -> int:
    return 2 if token == "[=]" else 3


def branch_size(token: str) -> int:
    """Number of following tokens a branch opener consumes."""
    return int(token[7:-1])


def ring_lookback(token: str) -> int:
    """How many atoms back (in derivation order) a ring token bonds to."""
    return int(token[5:-1])


def tokenize(raw: str) -> TokenSequence:
    """Split a surface string into its bracketed tokens.

    Raises EmptyInputError on "" and UnknownTokenError (with the bare
    symbol and the token position) for anything outside the alphabet.
    """
    if raw == "":
        raise EmptyInputError("empty token string")
    tokens: list[str] = []
    i = 0
    position = 0
    while i < len(raw):
        if raw[i] != "[":
            end = raw.find("[", i)
            fragment = raw[i:] if end < 0 else raw[i:end]
            raise UnknownTokenError(fragment, position)
        close = raw.find("]", i + 1)
        if close < 0:
            raise UnknownTokenError(raw[i + 1 :], position)
        token = raw[i : close + 1]
        if token not in _ALPHABET_SET:
            raise UnknownTokenError(raw[i + 1 : close], position)
        tokens.append(token)
        i = close + 1
        position += 1
    return tuple(tokens)


def render(tokens) -> str:
    """Inverse of `tokenize`: concatenate tokens back into a surface string."""
    return "".join(tokens)


def levenshtein(a, b) -> int:
    """Token-level edit distance with unit insert/delete/substitute costs."""
    a = tuple(a)
    b = tuple(b)
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, tok_a in enumerate(a, start=1):
        current = [i]
        for j, tok_b in enumerate(b, start=1):
            cost = 0 if tok_a == tok_b else 1
            current.append(
                min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + cost)
            )
        previous = current
    return previous[-1]
