import itertools
import random

import pytest

from itermol.chem.fingerprint import morgan_fingerprint, tanimoto
from itermol.chem.graph import decode
from itermol.chem.tokens import ALPHABET, tokenize
from itermol.engine.seeds import maxmin_select
from itermol.errors import CountTooLargeError


def test_selecting_everything_returns_all_indices(world):
    graphs = world.graphs[:9]
    picked = maxmin_select(graphs, 9, 0)
    assert sorted(picked) == list(range(9))


def test_count_one_returns_start(world):
    assert maxmin_select(world.graphs[:5], 1, 3) == [3]


def test_count_too_large(world):
    with pytest.raises(CountTooLargeError):
        maxmin_select(world.graphs[:4], 5, 0)


def test_overlapping_middle_is_skipped():
    # A and C share no features; B overlaps both, so MaxMin from A picks C
    a = decode(tokenize("[C][C][C]"))
    b = decode(tokenize("[C][O]"))
    c = decode(tokenize("[O][O]"))
    fa, fb, fc = (morgan_fingerprint(g) for g in (a, b, c))
    assert tanimoto(fa, fc) == 0.0
    assert tanimoto(fa, fb) > 0.0 and tanimoto(fb, fc) > 0.0
    assert maxmin_select([a, b, c], 2, 0) == [0, 2]


def _brute_force_two(graphs, start, radius=2):
    fps = [morgan_fingerprint(g, radius) for g in graphs]
    best = None
    for j in range(len(graphs)):
        if j == start:
            continue
        d = 1.0 - tanimoto(fps[start], fps[j])
        key = (-d, j)
        if best is None or key < best[0]:
            best = (key, j)
    return [start, best[1]]


def test_first_two_picks_match_brute_force():
    rng = random.Random(14)
    for _ in range(20):
        graphs = [
            decode(tuple(rng.choice(ALPHABET) for _ in range(rng.randint(1, 14))))
            for _ in range(rng.randint(2, 12))
        ]
        for start in range(len(graphs)):
            assert maxmin_select(graphs, 2, start) == _brute_force_two(graphs, start)


def test_greedy_invariant_each_pick_maximizes_min_distance(world):
    graphs = world.graphs[:30]
    fps = [morgan_fingerprint(g) for g in graphs]
    picked = maxmin_select(graphs, 6, 0)
    chosen = [picked[0]]
    for nxt in picked[1:]:
        def min_dist(i):
            return min(1.0 - tanimoto(fps[i], fps[j]) for j in chosen)

        best = max(
            (i for i in range(len(graphs)) if i not in chosen),
            key=lambda i: (min_dist(i), -i),
        )
        assert nxt == best
        chosen.append(nxt)
