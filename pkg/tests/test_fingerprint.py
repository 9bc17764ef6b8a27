import random

import pytest

from itermol.chem.fingerprint import (
    Fingerprint,
    diversity,
    diversity_from_fingerprints,
    morgan_fingerprint,
    tanimoto,
)
from itermol.chem.graph import Atom, MolGraph, decode
from itermol.chem.tokens import ALPHABET, ATOM_VALENCE, tokenize
from itermol.errors import RadiusMismatchError, TooFewItemsError


def _fp(features, radius=2):
    return Fingerprint(frozenset(features), radius, len(features))


def test_empty_graph_has_empty_features():
    fp = morgan_fingerprint(MolGraph((), ()), 2)
    assert fp.features == frozenset()


def test_ethane_radius_zero_single_feature():
    # both carbons share (element, degree, hydrogens, bond order) exactly
    fp = morgan_fingerprint(decode(tokenize("[C][C]")), 0)
    assert len(fp.features) == 1


def test_isomorphic_graphs_same_fingerprint():
    def graph(order):
        # propane with atoms laid out in the given index order
        atoms = [None] * 3
        for slot, kind in zip(order, ("end", "mid", "end")):
            atoms[slot] = Atom("C", 4, 3 if kind == "end" else 2)
        i_end1, i_mid, i_end2 = order
        bonds = tuple(
            sorted([(min(i_end1, i_mid), max(i_end1, i_mid), 1),
                    (min(i_mid, i_end2), max(i_mid, i_end2), 1)])
        )
        return MolGraph(tuple(atoms), bonds)

    a = graph((0, 1, 2))
    b = graph((2, 0, 1))
    for radius in range(0, 4):
        assert (
            morgan_fingerprint(a, radius).features
            == morgan_fingerprint(b, radius).features
        )


def test_feature_sets_grow_with_radius():
    rng = random.Random(3)
    for _ in range(100):
        tokens = tuple(rng.choice(ALPHABET) for _ in range(rng.randint(1, 25)))
        g = decode(tokens)
        sizes = [len(morgan_fingerprint(g, r).features) for r in range(5)]
        assert sizes == sorted(sizes)


def test_radius_bounds():
    g = decode(tokenize("[C]"))
    with pytest.raises(ValueError):
        morgan_fingerprint(g, 5)
    with pytest.raises(ValueError):
        morgan_fingerprint(g, -1)


def test_tanimoto_identity_disjoint_and_overlap():
    s = _fp({1, 2, 3})
    assert tanimoto(s, s) == 1.0
    assert tanimoto(_fp({1, 2}), _fp({3, 4})) == 0.0
    assert tanimoto(_fp({1, 2, 3}), _fp({2, 3, 4})) == 0.5
    assert tanimoto(_fp(set()), _fp(set())) == 1.0


def test_tanimoto_radius_mismatch():
    with pytest.raises(RadiusMismatchError):
        tanimoto(_fp({1}, radius=1), _fp({1}, radius=2))


def test_tanimoto_symmetric_on_random_graphs():
    rng = random.Random(8)
    graphs = [
        decode(tuple(rng.choice(ALPHABET) for _ in range(rng.randint(1, 20))))
        for _ in range(30)
    ]
    fps = [morgan_fingerprint(g) for g in graphs]
    for _ in range(200):
        a, b = rng.choice(fps), rng.choice(fps)
        assert tanimoto(a, b) == tanimoto(b, a)
        assert 0.0 <= tanimoto(a, b) <= 1.0


def test_diversity_trivial_cases():
    g = decode(tokenize("[C][C]"))
    assert diversity([g, g]) == 0.0
    carbon_chain = decode(tokenize("[C][C][C]"))
    oxygens = decode(tokenize("[O][O]"))
    assert (
        tanimoto(morgan_fingerprint(carbon_chain), morgan_fingerprint(oxygens)) == 0.0
    )
    assert diversity([carbon_chain, oxygens]) == 1.0
    with pytest.raises(TooFewItemsError):
        diversity([g])


def test_diversity_is_mean_pairwise_dissimilarity():
    fps = [_fp({1, 2, 10}), _fp({1, 3, 4}), _fp({1, 2, 5, 6})]
    sims = [
        tanimoto(fps[0], fps[1]),
        tanimoto(fps[0], fps[2]),
        tanimoto(fps[1], fps[2]),
    ]
    expected = sum(1.0 - s for s in sims) / 3.0
    assert diversity_from_fingerprints(fps) == pytest.approx(expected, abs=1e-15)


def _brute_force_diversity(graphs, radius=2):
    fps = [morgan_fingerprint(g, radius) for g in graphs]
    total = 0.0
    pairs = 0
    for i in range(len(fps)):
        for j in range(len(fps)):
            if i == j:
                continue
            inter = len(fps[i].features & fps[j].features)
            union = len(fps[i].features | fps[j].features)
            sim = 1.0 if union == 0 else inter / union
            total += 1.0 - sim
            pairs += 1
    return total / pairs


def test_diversity_matches_ordered_pair_brute_force():
    rng = random.Random(4)
    for _ in range(30):
        graphs = [
            decode(tuple(rng.choice(ALPHABET) for _ in range(rng.randint(1, 15))))
            for _ in range(rng.randint(2, 20))
        ]
        assert diversity(graphs) == pytest.approx(
            _brute_force_diversity(graphs), abs=1e-12
        )


def test_duplicating_a_medoid_reduces_diversity():
    # appending a copy of an arbitrary element can *raise* the mean pairwise
    # distance when that element is an outlier; duplicating the element with
    # the smallest total distance to the rest provably cannot
    rng = random.Random(6)
    for _ in range(30):
        graphs = [
            decode(tuple(rng.choice(ALPHABET) for _ in range(rng.randint(1, 15))))
            for _ in range(rng.randint(2, 10))
        ]
        fps = [morgan_fingerprint(g) for g in graphs]
        totals = [
            sum(1.0 - tanimoto(fps[i], fps[j]) for j in range(len(fps)) if j != i)
            for i in range(len(fps))
        ]
        medoid = totals.index(min(totals))
        base = diversity(graphs)
        assert diversity(graphs + [graphs[medoid]]) <= base + 1e-12
