from itermol.chem.graph import decode
from itermol.chem.properties import PENALIZED_LOGP, PropertyOracle
from itermol.chem.tokens import MAX_SEQUENCE_TOKENS, tokenize
from itermol.corpus import synthetic_corpus


def test_deterministic_and_sized():
    a = synthetic_corpus(200, 5)
    b = synthetic_corpus(200, 5)
    assert a == b
    assert len(a) == 200
    assert len(set(a)) == 200


def test_every_molecule_decodes_within_limits():
    oracle = PropertyOracle(PENALIZED_LOGP)
    for text in synthetic_corpus(360, 11):
        tokens = tokenize(text)
        assert 1 <= len(tokens) <= MAX_SEQUENCE_TOKENS
        graph = decode(tokens)
        assert len(graph.atoms) >= 1
        oracle.raw(graph)


def test_property_spread_covers_a_wide_band():
    oracle = PropertyOracle(PENALIZED_LOGP)
    values = [oracle.raw(decode(tokenize(t))) for t in synthetic_corpus(360, 11)]
    assert min(values) < 0.0
    assert max(values) > 5.0
