"""Explicit T(2,3,v) trade families.

* minimal trades ``(a0-b0)(a1-b1)(a2-b2)``, volume 4 on 6 points;
* cycle trades over closed walks on the pair graph with vertices a_i b_i;
* the volume-10 trade built from three permuted minimal trades;
* the companion trade used by the AK algorithm.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .combinatorics import Labelling
from .inclusion import SignedCollection


def minimal_trade(a: Sequence[int], b: Sequence[int], v: int) -> SignedCollection:
    """Expand ``(a0-b0)(a1-b1)(a2-b2)`` into 8 signed blocks.

    The pairing is positional: a[i] is traded against b[i].  Each block takes
    b[i] at the positions in some S and a[i] elsewhere, with sign (-1)^|S|.
    """
    a, b = tuple(a), tuple(b)
    if len(a) != 3 or len(b) != 3:
        raise ValueError("minimal trade needs two ordered triples")
    if len(set(a)) != 3 or len(set(b)) != 3:
        raise ValueError(f"triples {a}, {b} have repeated elements")
    if set(a) & set(b):
        raise ValueError(f"triples {a} and {b} are not disjoint")
    out = SignedCollection(v, 3)
    for choice in product((0, 1), repeat=3):
        block = [b[i] if take_b else a[i] for i, take_b in enumerate(choice)]
        out.add(block, (-1) ** sum(choice))
    return out


@dataclass(frozen=True)
class ClosedWalk:
    """Directed closed walk on pair-graph indices, as a list of edges (i, j)."""

    edges: tuple[tuple[int, int], ...]

    @classmethod
    def from_cycle(cls, vertices: Sequence[int]) -> ClosedWalk:
        """Vertex sequence i0, i1, ..., closed back to i0.

        A trailing repeat of i0 (the ``a0b0, a1b1, a2b2, a0b0`` notation) is
        accepted.
        """
        vs = list(vertices)
        if len(vs) > 1 and vs[0] == vs[-1]:
            vs.pop()
        return cls(tuple(zip(vs, vs[1:] + vs[:1])))

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.edges)

    def reversed(self) -> ClosedWalk:
        return ClosedWalk(tuple((j, i) for i, j in reversed(self.edges)))

    def validate(self, size: int) -> None:
        """Raise ValueError unless this is a closed walk on [0, size) with no repeated undirected edge."""
        if not self.edges:
            raise ValueError("empty walk")
        for (_, head), (tail, _) in zip(self.edges, self.edges[1:] + self.edges[:1]):
            if head != tail:
                raise ValueError("walk does not close up")
        seen = set()
        for i, j in self.edges:
            if not (0 <= i < size and 0 <= j < size):
                raise ValueError(f"edge ({i}, {j}) has an index outside [0, {size})")
            if i == j:
                raise ValueError(f"loop at index {i}")
            key = frozenset((i, j))
            if key in seen:
                raise ValueError(f"undirected edge {{{i}, {j}}} used twice")
            seen.add(key)
        # a closing walk already balances degrees; kept as an explicit guard
        if Counter(i for i, _ in self.edges) != Counter(j for _, j in self.edges):
            raise ValueError("in-degree and out-degree differ")


def edge_bundle(i: int, j: int, labelling: Labelling) -> SignedCollection:
    """The 4 signed blocks a_ib_i(a_j+b_j) - a_jb_j(a_i+b_i) of one directed edge.

    Not a trade by itself: the pair {a_i, b_i} is hit twice and {a_j, b_j}
    twice with the opposite sign; these cancel only around a closed walk.
    """
    out = SignedCollection(labelling.v, 3)
    _add_edge(out, i, j, labelling)
    return out


def _add_edge(out: SignedCollection, i: int, j: int, labelling: Labelling) -> None:
    ai, bi = labelling.pair(i)
    aj, bj = labelling.pair(j)
    out.add((ai, bi, aj), 1)
    out.add((ai, bi, bj), 1)
    out.add((aj, bj, ai), -1)
    out.add((aj, bj, bi), -1)


def cycle_trade(cycle: Sequence[int] | ClosedWalk, labelling: Labelling) -> SignedCollection:
    """Sum of edge bundles around a cycle or closed walk; volume 2 * #edges.

    A plain vertex sequence is treated as a simple cycle and must have at
    least 3 distinct indices.
    """
    if isinstance(cycle, ClosedWalk):
        walk = cycle
    else:
        vs = list(cycle)
        if len(vs) > 1 and vs[0] == vs[-1]:
            vs.pop()
        if len(vs) < 3 or len(set(vs)) != len(vs):
            raise ValueError(f"{tuple(cycle)} is not a simple cycle of length >= 3")
        walk = ClosedWalk.from_cycle(vs)
    walk.validate(labelling.size)
    out = SignedCollection(labelling.v, 3)
    for i, j in walk.edges:
        _add_edge(out, i, j, labelling)
    return out


def v10_trade(alpha: Sequence[int], labelling: Labelling) -> SignedCollection:
    """Volume-10 trade on the six points a_alpha, b_alpha.

    Identity pairing plus one rotation of the b's, minus the other rotation.
    """
    al = tuple(sorted(alpha))
    if len(al) != 3 or len(set(al)) != 3 or not all(0 <= x < labelling.size for x in al):
        raise ValueError(f"alpha {tuple(alpha)} is not a 3-subset of [0, {labelling.size})")
    a = [labelling.a[x] for x in al]
    b = [labelling.b[x] for x in al]
    v = labelling.v
    return (
        minimal_trade(a, b, v)
        + minimal_trade(a, (b[1], b[2], b[0]), v)
        - minimal_trade(a, (b[2], b[0], b[1]), v)
    )


def ak_companion_block(block: Sequence[int], v: int) -> tuple[int, int, int]:
    """Companion triple (b0, b1, b2) of block a0a1a2 under the AK rules.

    b2 = a2 + 1, then b1 and b0 are the least unused elements above a1 and
    a0 respectively.
    """
    a0, a1, a2 = sorted(block)
    b2 = a2 + 1
    if b2 >= v:
        raise ValueError(f"no AK companion for {(a0, a1, a2)} at v={v}: a2 + 1 is outside X")
    used = {a0, a1, a2, b2}
    b1 = next((x for x in range(a1 + 1, v) if x not in used), None)
    if b1 is None:
        raise ValueError(f"no AK companion for {(a0, a1, a2)} at v={v}: b1 unavailable")
    used.add(b1)
    b0 = next((x for x in range(a0 + 1, v) if x not in used), None)
    if b0 is None:
        raise ValueError(f"no AK companion for {(a0, a1, a2)} at v={v}: b0 unavailable")
    return b0, b1, b2


def ak_companion(block: Sequence[int], v: int) -> SignedCollection:
    a = tuple(sorted(block))
    return minimal_trade(a, ak_companion_block(a, v), v)

