"""Ground-set arithmetic: binomials, lex ranking of k-subsets, a/b labellings.

The ground set is always X = {0, ..., v-1}.  A block is a sorted tuple of
distinct elements of X.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence

Block = tuple[int, ...]


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient; 0 when k > n."""
    if n < 0 or k < 0:
        raise ValueError(f"binomial needs nonnegative arguments, got ({n}, {k})")
    return comb(n, k)


def make_block(elements: Iterable[int], v: int, k: int | None = None) -> Block:
    """Normalize ``elements`` into a sorted block and validate it against (v, k)."""
    block = tuple(sorted(elements))
    if k is not None and len(block) != k:
        raise ValueError(f"block {block} has size {len(block)}, expected {k}")
    if len(set(block)) != len(block):
        raise ValueError(f"block {block} has repeated elements")
    if block and (block[0] < 0 or block[-1] >= v):
        raise ValueError(f"block {block} not inside [0, {v})")
    return block


def iter_blocks(v: int, k: int) -> Iterator[Block]:
    """All k-subsets of X in lexicographic order."""
    return combinations(range(v), k)


def rank_lex(block: Sequence[int], v: int) -> int:
    """0-based position of ``block`` in the lex order of C(X, k)."""
    k = len(block)
    prev = -1
    for x in block:
        if x <= prev or x >= v:
            raise ValueError(f"invalid block {tuple(block)} for v={v}")
        prev = x
    # count of blocks lex-greater than `block`, subtracted from the last rank
    tail = sum(comb(v - 1 - x, k - i) for i, x in enumerate(block))
    return comb(v, k) - 1 - tail


def unrank_lex(rank: int, v: int, k: int) -> Block:
    """Inverse of :func:`rank_lex`."""
    total = comb(v, k)
    if not 0 <= rank < total:
        raise ValueError(f"rank {rank} out of range [0, {total})")
    out = []
    x = 0
    for i in range(k):
        # skip every block whose i-th element is x
        while rank >= comb(v - 1 - x, k - 1 - i):
            rank -= comb(v - 1 - x, k - 1 - i)
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


@dataclass(frozen=True)
class Labelling:
    """Split of X into paired halves a_0..a_{2n} and b_0..b_{2n}.

    Index i names the vertex a_i b_i of the pair graph used by cycle trades.
    """

    v: int
    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))
        if len(self.a) != len(self.b) or 2 * len(self.a) != self.v:
            raise ValueError("labelling halves must each have v/2 elements")
        if sorted(self.a + self.b) != list(range(self.v)):
            raise ValueError("labelling halves must be disjoint and cover X")

    @property
    def size(self) -> int:
        """Number of index pairs, v/2."""
        return len(self.a)

    def pair(self, i: int) -> tuple[int, int]:
        return self.a[i], self.b[i]


def default_labelling(v: int) -> Labelling:
    """a_i = i, b_i = i + v/2, for v = 2 (mod 4)."""
    if v < 2 or v % 4 != 2:
        raise ValueError(f"labelling needs v = 2 (mod 4), got v={v}")
    half = v // 2
    return Labelling(v, tuple(range(half)), tuple(range(half, v)))
