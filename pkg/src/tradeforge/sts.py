"""Steiner triple systems and pair partitions.

Bose's construction covers orders = 3 (mod 6), Skolem's covers 1 (mod 6).
Both are checked with :func:`verify_sts` before they are handed out.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .combinatorics import Block
from .inclusion import SignedCollection, is_design

MAX_ORDER = 99


@dataclass(frozen=True)
class TripleSystem:
    order: int
    triples: frozenset[Block]

    def __post_init__(self):
        triples = frozenset(tuple(sorted(t)) for t in self.triples)
        for t in triples:
            if len(t) != 3 or len(set(t)) != 3 or t[0] < 0 or t[-1] >= self.order:
                raise ValueError(f"bad triple {t} for order {self.order}")
        object.__setattr__(self, "triples", triples)

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self):
        return iter(sorted(self.triples))

    def as_collection(self) -> SignedCollection:
        return SignedCollection.from_blocks(self.order, 3, self.triples)


@dataclass(frozen=True)
class PairPartition:
    """Disjoint 2-subsets covering the index set {0, ..., size-1}."""

    size: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple(sorted(tuple(sorted(p)) for p in self.pairs))
        object.__setattr__(self, "pairs", pairs)
        points = [x for p in pairs for x in p]
        if any(len(p) != 2 for p in pairs) or sorted(points) != list(range(self.size)):
            raise ValueError(f"{pairs} is not a partition of [0, {self.size}) into pairs")


def sts_admissible(order: int) -> bool:
    return order >= 0 and order % 6 in (1, 3)


def _bose(order: int) -> set[Block]:
    n = order // 3
    half = (n + 1) // 2  # inverse of 2 mod n, n odd

    def pt(x: int, i: int) -> int:
        return x + (i % 3) * n

    triples = {(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(n)}
    for i in range(3):
        for x, y in combinations(range(n), 2):
            triples.add(tuple(sorted((pt(x, i), pt(y, i), pt((x + y) * half % n, i + 1)))))
    return triples


def _skolem(order: int) -> set[Block]:
    m = (order - 1) // 6
    n = 2 * m
    inf = order - 1

    def pt(x: int, i: int) -> int:
        return x + (i % 3) * n

    def op(x: int, y: int) -> int:
        # half-idempotent commutative quasigroup on Z_2m
        s = (x + y) % n
        return s // 2 if s % 2 == 0 else (s - 1) // 2 + m

    triples = {(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(m)}
    for i in range(3):
        for x in range(m):
            triples.add(tuple(sorted((inf, pt(x + m, i), pt(x, i + 1)))))
        for x, y in combinations(range(n), 2):
            triples.add(tuple(sorted((pt(x, i), pt(y, i), pt(op(x, y), i + 1)))))
    return triples


def sts_generate(order: int) -> TripleSystem:
    """Deterministic STS of the given order (Bose for 3 mod 6, Skolem for 1 mod 6)."""
    if not sts_admissible(order):
        raise ValueError(f"no STS of order {order}: need order = 1 or 3 (mod 6)")
    if order > MAX_ORDER:
        raise ValueError(f"order {order} exceeds supported maximum {MAX_ORDER}")
    triples = _bose(order) if order % 6 == 3 else _skolem(order)
    ts = TripleSystem(order, frozenset(triples))
    if not verify_sts(ts):
        raise RuntimeError(f"construction produced an invalid STS({order})")
    return ts


def verify_sts(ts: TripleSystem) -> bool:
    """Every pair of [0, order) lies in exactly one triple."""
    if ts.order < 3:
        return not ts.triples
    return is_design(2, 1, ts.as_collection())


def default_pair_partition(m: int) -> PairPartition:
    """{0,1}, {2,3}, ..., {m-2, m-1}."""
    if m < 0 or m % 2:
        raise ValueError(f"pair partition needs an even size, got {m}")
    return PairPartition(m, tuple((i, i + 1) for i in range(0, m, 2)))


def _from_strings(order: int, words: Iterable[str]) -> TripleSystem:
    return TripleSystem(order, frozenset(tuple(int(c) for c in w) for w in words))


STS7 = _from_strings(7, "013 026 045 124 156 235 346".split())
STS9 = _from_strings(9, "012 036 048 057 138 147 156 237 246 258 345 678".split())
PAPER_STS = {7: STS7, 9: STS9}


def parse_sts(text: str, order: int | None = None, one_based: bool = False) -> TripleSystem:
    """Read one whitespace-separated triple per line; ``#`` lines are comments.

    Without an explicit order the largest point plus one is used.
    """
    shift = 1 if one_based else 0
    triples = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 3 integers, got {line!r}")
        triples.append(tuple(int(p) - shift for p in parts))
    if order is None:
        order = 1 + max((x for t in triples for x in t), default=-1)
    return TripleSystem(order, frozenset(triples))


def format_sts(ts: TripleSystem, one_based: bool = False) -> str:
    shift = 1 if one_based else 0
    return "".join(" ".join(str(x + shift) for x in t) + "\n" for t in ts)
