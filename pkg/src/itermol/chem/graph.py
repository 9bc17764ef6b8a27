"""Decode token strings into valence-valid molecular graphs.

The decoder is a total function over in-alphabet token sequences: tokens
that cannot legally attach are skipped instead of raising, so every
sequence yields a graph in which no atom exceeds its valence. The same
derivation rules make decoding deterministic and prefix-monotone (the
decode of a prefix is an atom-prefix subgraph of the full decode).

Derivation state is a chain cursor plus a pending bond order:

* an atom token bonds the new atom to the cursor with order
  ``min(pending, remaining(cursor), valence(new))`` and moves the cursor;
  it is skipped when the cursor has no free valence;
* ``[=]`` / ``[#]`` set the pending order for the next attachment;
* ``[BranchK]`` derives the following K tokens as a side chain rooted at
  the cursor (skipped, body included, when the cursor is saturated);
* ``[RingK]`` bonds the cursor to the atom K positions earlier in
  derivation order, capped by both remaining valences, skipped when the
  target is out of range, already bonded, or saturated.
"""

from dataclasses import dataclass

from ..errors import EmptyInputError
from .tokens import (
    ATOM_VALENCE,
    atom_element,
    bond_modifier_order,
    branch_size,
    is_atom,
    ring_lookback,
    BOND_MODIFIER_TOKENS,
    BRANCH_TOKENS,
)

# Standard atomic weights for the subset, unified atomic mass units.
ATOMIC_WEIGHT = {
    "C": 12.011,
    "N": 14.007,
    "O": 15.999,
    "S": 32.06,
    "F": 18.998,
    "Cl": 35.45,
    "Br": 79.904,
}
HYDROGEN_WEIGHT = 1.008


@dataclass(frozen=True)
class Atom:
    element: str
    max_valence: int
    implicit_hydrogens: int


@dataclass(frozen=True)
class MolGraph:
    """Atoms plus integer-order bonds; hydrogens are implicit."""

    atoms: tuple[Atom, ...]
    bonds: tuple[tuple[int, int, int], ...]

    def __len__(self) -> int:
        return len(self.atoms)

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Neighbor list: adjacency()[i] holds (neighbor, order) pairs."""
        adj: list[list[tuple[int, int]]] = [[] for _ in self.atoms]
        for i, j, order in self.bonds:
            adj[i].append((j, order))
            adj[j].append((i, order))
        return adj

    def degree(self, i: int) -> int:
        return sum(1 for a, b, _ in self.bonds if i in (a, b))

    def bond_order_sum(self, i: int) -> int:
        return sum(order for a, b, order in self.bonds if i in (a, b))


@dataclass(frozen=True)
class DecodeResult:
    graph: MolGraph
    skipped_tokens: int


class _Builder:
    def __init__(self):
        self.elements: list[str] = []
        self.remaining: list[int] = []
        self.bonds: list[tuple[int, int, int]] = []
        self.bonded: set[tuple[int, int]] = set()
        self.skipped = 0

    def add_atom(self, element: str, attach: int | None, pending: int) -> int | None:
        valence = ATOM_VALENCE[element]
        if not self.elements:
            self.elements.append(element)
            self.remaining.append(valence)
            return 0
        assert attach is not None
        if self.remaining[attach] == 0:
            self.skipped += 1
            return None
        order = min(pending, self.remaining[attach], valence)
        index = len(self.elements)
        self.elements.append(element)
        self.remaining.append(valence - order)
        self.remaining[attach] -= order
        self._record_bond(attach, index, order)
        return index

    def add_ring(self, cursor: int | None, lookback: int, pending: int) -> None:
        if cursor is None:
            self.skipped += 1
            return
        target = cursor - lookback
        key = (min(target, cursor), max(target, cursor))
        if (
            target < 0
            or target == cursor
            or key in self.bonded
            or self.remaining[cursor] == 0
            or self.remaining[target] == 0
        ):
            self.skipped += 1
            return
        order = min(pending, self.remaining[cursor], self.remaining[target])
        self.remaining[cursor] -= order
        self.remaining[target] -= order
        self._record_bond(target, cursor, order)

    def _record_bond(self, i: int, j: int, order: int) -> None:
        lo, hi = min(i, j), max(i, j)
        self.bonds.append((lo, hi, order))
        self.bonded.add((lo, hi))


def _derive(tokens, start: int, end: int, attach: int | None, b: _Builder) -> None:
    cursor = attach
    pending = 1
    i = start
    while i < end:
        token = tokens[i]
        if is_atom(token):
            index = b.add_atom(atom_element(token), cursor, pending)
            if index is not None:
                cursor = index
            pending = 1
            i += 1
        elif token in BOND_MODIFIER_TOKENS:
            pending = bond_modifier_order(token)
            i += 1
        elif token in BRANCH_TOKENS:
            size = branch_size(token)
            body_end = min(i + 1 + size, end)
            if cursor is not None and b.remaining[cursor] >= 1 and body_end > i + 1:
                _derive(tokens, i + 1, body_end, cursor, b)
            else:
                b.skipped += 1 + (body_end - i - 1)
            i = body_end
        else:  # ring token
            b.add_ring(cursor, ring_lookback(token), pending)
            pending = 1
            i += 1


def decode_with_diagnostics(seq) -> DecodeResult:
    """Decode a token sequence, reporting how many tokens were skipped."""
    tokens = tuple(seq)
    if not tokens:
        raise EmptyInputError("cannot decode an empty token sequence")
    b = _Builder()
    _derive(tokens, 0, len(tokens), None, b)
    atoms = tuple(
        Atom(el, ATOM_VALENCE[el], rem) for el, rem in zip(b.elements, b.remaining)
    )
    return DecodeResult(MolGraph(atoms, tuple(b.bonds)), b.skipped)


def decode(seq) -> MolGraph:
    """Decode a token sequence into a valence-valid molecular graph."""
    return decode_with_diagnostics(seq).graph


def molecular_weight(g: MolGraph) -> float:
    """Sum of heavy-atom weights plus implicit hydrogens, in u."""
    total = 0.0
    hydrogens = 0
    for atom in g.atoms:
        total += ATOMIC_WEIGHT[atom.element]
        hydrogens += atom.implicit_hydrogens
    return total + HYDROGEN_WEIGHT * hydrogens


def ring_info(g: MolGraph) -> list[int]:
    """Cycle sizes of the graph's cycle basis, ascending.

    Uses the spanning-tree chord method: BFS (lowest atom index first)
    builds a forest, and each non-tree edge closes exactly one cycle
    whose length is the tree path between its endpoints plus one.
    """
    n = len(g.atoms)
    if n == 0:
        return []
    adj: list[list[int]] = [[] for _ in range(n)]
    tree_edges: set[tuple[int, int]] = set()
    for i, j, _ in g.bonds:
        adj[i].append(j)
        adj[j].append(i)
    for neighbors in adj:
        neighbors.sort()

    parent = [-1] * n
    depth = [0] * n
    visited = [False] * n
    order: list[int] = []
    for root in range(n):
        if visited[root]:
            continue
        visited[root] = True
        queue = [root]
        while queue:
            node = queue.pop(0)
            order.append(node)
            for nb in adj[node]:
                if not visited[nb]:
                    visited[nb] = True
                    parent[nb] = node
                    depth[nb] = depth[node] + 1
                    tree_edges.add((min(node, nb), max(node, nb)))
                    queue.append(nb)

    sizes = []
    for i, j, _ in sorted(g.bonds):
        if (min(i, j), max(i, j)) in tree_edges:
            continue
        # tree path length between i and j
        a, b = i, j
        length = 0
        while depth[a] > depth[b]:
            a = parent[a]
            length += 1
        while depth[b] > depth[a]:
            b = parent[b]
            length += 1
        while a != b:
            a = parent[a]
            b = parent[b]
            length += 2
        sizes.append(length + 1)
    sizes.sort()
    return sizes
