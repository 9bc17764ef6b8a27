"""Greedy MaxMin selection of maximally diverse seed compounds."""

from ..chem.fingerprint import morgan_fingerprint, tanimoto
from ..errors import CountTooLargeError


def maxmin_select(graphs, count: int, start_index: int = 0, radius: int = 2) -> list[int]:
    """Indices of a maximally diverse subset under Tanimoto distance.

    Starts from `start_index` and repeatedly adds the item whose minimum
    distance (1 - similarity) to the selected set is largest, breaking
    ties by lowest index.
    """
    graphs = list(graphs)
    if count > len(graphs):
        raise CountTooLargeError(f"count {count} > corpus size {len(graphs)}")
    if count < 1:
        raise ValueError("count must be >= 1")
    if not 0 <= start_index < len(graphs):
        raise ValueError("start_index out of range")
    fps = [morgan_fingerprint(g, radius) for g in graphs]
    selected = [start_index]
    min_dist = [1.0 - tanimoto(fp, fps[start_index]) for fp in fps]
    min_dist[start_index] = -1.0
    while len(selected) < count:
        best = max(range(len(graphs)), key=lambda i: (min_dist[i], -i))
        selected.append(best)
        min_dist[best] = -1.0
        for i in range(len(graphs)):
            if min_dist[i] >= 0.0:
                d = 1.0 - tanimoto(fps[i], fps[best])
                if d < min_dist[i]:
                    min_dist[i] = d
    return selected
