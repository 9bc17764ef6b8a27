"""Circular fingerprints, Tanimoto similarity, and set diversity.

Features are 32-bit identifiers from iterative neighborhood hashing:
round 0 hashes each atom's local tuple (element, degree, implicit
hydrogens, total bond order); round r hashes the atom's round r-1
identifier together with the sorted multiset of (bond order, neighbor
round r-1 identifier) pairs. The fingerprint is the union of all round
identifiers of all atoms, so feature sets grow with radius and depend
only on the graph's isomorphism class.

The hash is a fixed 32-bit FNV-1a over little-endian words, keeping
fingerprints stable across platforms and processes.
"""

from dataclasses import dataclass

from ..errors import RadiusMismatchError, TooFewItemsError
from .graph import MolGraph
from .tokens import ATOM_VALENCE

_FNV_OFFSET = 2166136261
_FNV_PRIME = 16777619
_ELEMENT_INDEX = {el: i for i, el in enumerate(ATOM_VALENCE)}

DEFAULT_RADIUS = 2


def _hash32(parts: tuple[int, ...]) -> int:
    h = _FNV_OFFSET
    for value in parts:
        v = value & 0xFFFFFFFF
        for _ in range(4):
            h ^= v & 0xFF
            h = (h * _FNV_PRIME) & 0xFFFFFFFF
            v >>= 8
    return h


@dataclass(frozen=True)
class Fingerprint:
    features: frozenset[int]
    radius: int
    graph_size: int


def morgan_fingerprint(g: MolGraph, radius: int = DEFAULT_RADIUS) -> Fingerprint:
    """Circular fingerprint of `g` with neighborhoods up to `radius`."""
    if not 0 <= radius <= 4:
        raise ValueError(f"radius must be in [0, 4], got {radius}")
    adjacency = g.adjacency()
    ids = [
        _hash32(
            (
                0,
                _ELEMENT_INDEX[atom.element],
                len(adjacency[i]),
                atom.implicit_hydrogens,
                g.bond_order_sum(i),
            )
        )
        for i, atom in enumerate(g.atoms)
    ]
    features = set(ids)
    for r in range(1, radius + 1):
        next_ids = []
        for i in range(len(g.atoms)):
            env = sorted((order, ids[j]) for j, order in adjacency[i])
            parts = [r, ids[i]]
            for order, neighbor_id in env:
                parts.append(order)
                parts.append(neighbor_id)
            next_ids.append(_hash32(tuple(parts)))
        ids = next_ids
        features.update(ids)
    return Fingerprint(frozenset(features), radius, len(g.atoms))


def tanimoto(a: Fingerprint, b: Fingerprint) -> float:
    """Intersection-over-union of two feature sets; 1.0 when both empty."""
    if a.radius != b.radius:
        raise RadiusMismatchError(f"radius {a.radius} != {b.radius}")
    if not a.features and not b.features:
        return 1.0
    union = len(a.features | b.features)
    return len(a.features & b.features) / union


def diversity_from_fingerprints(fps) -> float:
    """Mean (1 - tanimoto) over all unordered pairs of fingerprints."""
    fps = list(fps)
    if len(fps) < 2:
        raise TooFewItemsError("diversity needs at least 2 items")
    total = 0.0
    count = 0
    for i in range(len(fps)):
        for j in range(i + 1, len(fps)):
            total += 1.0 - tanimoto(fps[i], fps[j])
            count += 1
    return total / count


def diversity(graphs, radius: int = DEFAULT_RADIUS) -> float:
    """Mean pairwise fingerprint dissimilarity of a set of graphs, in [0, 1]."""
    graphs = list(graphs)
    if len(graphs) < 2:
        raise TooFewItemsError("diversity needs at least 2 graphs")
    return diversity_from_fingerprints(morgan_fingerprint(g, radius) for g in graphs)
