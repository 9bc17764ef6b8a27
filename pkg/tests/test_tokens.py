import random

import pytest

from itermol.chem.tokens import ALPHABET, levenshtein, render, tokenize
from itermol.errors import EmptyInputError, UnknownTokenError


def test_tokenize_splits_tokens_in_order():
    assert tokenize("[C][C]") == ("[C]", "[C]")
    assert tokenize("[C][Branch1][O][Ring3]") == ("[C]", "[Branch1]", "[O]", "[Ring3]")


def test_tokenize_empty_input():
    with pytest.raises(EmptyInputError):
        tokenize("")


def test_tokenize_unknown_symbol_reports_position():
    with pytest.raises(UnknownTokenError) as info:
        tokenize("[C][Xx]")
    assert info.value.symbol == "Xx"
    assert info.value.position == 1


def test_tokenize_rejects_unbracketed_text():
    with pytest.raises(UnknownTokenError) as info:
        tokenize("C")
    assert info.value.position == 0
    with pytest.raises(UnknownTokenError):
        tokenize("[C]junk")
    with pytest.raises(UnknownTokenError):
        tokenize("[C][O")


def test_render_tokenize_round_trip():
    rng = random.Random(7)
    for _ in range(300):
        tokens = tuple(rng.choice(ALPHABET) for _ in range(rng.randint(1, 40)))
        text = render(tokens)
        assert tokenize(text) == tokens
        assert render(tokenize(text)) == text


def _levenshtein_oracle(a, b):
    # plain recursive definition with memoization, independent of the
    # two-row implementation under test
    from functools import lru_cache

    @lru_cache(maxsize=None)
    def d(i, j):
        if i == 0:
            return j
        if j == 0:
            return i
        cost = 0 if a[i - 1] == b[j - 1] else 1
        return min(d(i - 1, j) + 1, d(i, j - 1) + 1, d(i - 1, j - 1) + cost)

    return d(len(a), len(b))


def test_levenshtein_examples():
    s = tokenize("[C][N][O]")
    assert levenshtein(s, s) == 0
    assert levenshtein(tokenize("[C]"), tokenize("[C][C]")) == 1
    a, b = tokenize("[C][N][O]"), tokenize("[C][O][O]")
    assert _levenshtein_oracle(a, b) == 1
    assert levenshtein(a, b) == 1


def test_levenshtein_matches_oracle_on_random_pairs():
    rng = random.Random(12)
    for _ in range(100):
        a = tuple(rng.choice(ALPHABET) for _ in range(rng.randint(0, 10)))
        b = tuple(rng.choice(ALPHABET) for _ in range(rng.randint(0, 10)))
        assert levenshtein(a, b) == _levenshtein_oracle(a, b)


def test_levenshtein_metric_axioms():
    rng = random.Random(99)
    seqs = [
        tuple(rng.choice(ALPHABET) for _ in range(rng.randint(0, 8)))
        for _ in range(60)
    ]
    for _ in range(1000):
        a, b, c = rng.choice(seqs), rng.choice(seqs), rng.choice(seqs)
        dab, dba = levenshtein(a, b), levenshtein(b, a)
        assert dab == dba
        assert (dab == 0) == (a == b)
        assert levenshtein(a, c) <= dab + levenshtein(b, c)
