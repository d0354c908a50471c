"""Z-collections of blocks, the inclusion operator W_tk, and trade predicates.

``apply_W`` is the single oracle every construction in the package is checked
against.  It never materializes W: each block pushes its coefficient onto the
ranks of its own t-subsets.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from .combinatorics import Block, binomial, iter_blocks, make_block, rank_lex, unrank_lex

INT64_MAX = 2**63 - 1


def _checked(c: int) -> int:
    if not -INT64_MAX - 1 <= c <= INT64_MAX:
        raise OverflowError(f"coefficient {c} does not fit in 64 bits")
    return c


class SignedCollection:
    """Sparse integer-valued function on C(X, k); zero entries are never stored."""

    __slots__ = ("v", "k", "_coeffs")

    def __init__(self, v: int, k: int, coeffs: Mapping[Iterable[int], int] | None = None):
        self.v = v
        self.k = k
        self._coeffs: dict[Block, int] = {}
        if coeffs:
            for block, c in coeffs.items():
                self.add(block, c)

    @classmethod
    def from_blocks(cls, v: int, k: int, blocks: Iterable[Iterable[int]], coef: int = 1):
        out = cls(v, k)
        for block in blocks:
            out.add(block, coef)
        return out

    def add(self, block: Iterable[int], coef: int) -> None:
        """In-place ``self[block] += coef``."""
        key = make_block(block, self.v, self.k)
        c = _checked(self._coeffs.get(key, 0) + coef)
        if c:
            self._coeffs[key] = c
        else:
            self._coeffs.pop(key, None)

    def __getitem__(self, block: Iterable[int]) -> int:
        return self._coeffs.get(tuple(sorted(block)), 0)

    def __contains__(self, block) -> bool:
        return tuple(sorted(block)) in self._coeffs

    def __len__(self) -> int:
        return len(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __iter__(self) -> Iterator[Block]:
        return iter(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def sorted_items(self) -> list[tuple[Block, int]]:
        return sorted(self._coeffs.items())

    def support(self) -> frozenset[Block]:
        return frozenset(self._coeffs)

    def copy(self) -> SignedCollection:
        out = SignedCollection(self.v, self.k)
        out._coeffs = dict(self._coeffs)
        return out

    def _combine(self, other: SignedCollection, sign: int) -> SignedCollection:
        if not isinstance(other, SignedCollection):
            return NotImplemented
        if (self.v, self.k) != (other.v, other.k):
            raise ValueError("collections over different (v, k) cannot be combined")
        out = self.copy()
        for block, c in other._coeffs.items():
            out.add(block, sign * c)
        return out

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self * -1

    def __mul__(self, scalar: int) -> SignedCollection:
        out = SignedCollection(self.v, self.k)
        if scalar:
            out._coeffs = {b: _checked(c * scalar) for b, c in self._coeffs.items()}
        return out

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, SignedCollection):
            return NotImplemented
        return (self.v, self.k, self._coeffs) == (other.v, other.k, other._coeffs)

    def __repr__(self) -> str:
        terms = " ".join(f"{c:+d}{{{','.join(map(str, b))}}}" for b, c in self.sorted_items())
        return f"SignedCollection(v={self.v}, k={self.k}: {terms})"


@dataclass(frozen=True)
class TSubsetVector:
    """Image W_tk f, indexed by lex rank over C(X, t)."""

    v: int
    t: int
    counts: tuple[int, ...]

    def is_zero(self) -> bool:
        return not any(self.counts)

    def is_constant(self, value: int) -> bool:
        return all(c == value for c in self.counts)

    def violations(self, expected: int = 0) -> Iterator[tuple[Block, int]]:
        """(t-subset, count) pairs where the count differs from ``expected``."""
        for r, c in enumerate(self.counts):
            if c != expected:
                yield unrank_lex(r, self.v, self.t), c


def _check_tkv(t: int, k: int, v: int, strict: bool = True) -> None:
    # W_tk is defined for any t <= k <= v; k <= v - t is only needed for full rank
    if not 0 <= t <= k <= (v - t if strict else v):
        bound = "v - t" if strict else "v"
        raise ValueError(f"need 0 <= t <= k <= {bound}, got t={t}, k={k}, v={v}")


def _accumulate(args) -> list[int]:
    t, v, items = args
    counts = [0] * binomial(v, t)
    for block, c in items:
        for sub in combinations(block, t):
            counts[rank_lex(sub, v)] += c
    return counts


def apply_W(t: int, f: SignedCollection, jobs: int = 1) -> TSubsetVector:
    """Sparse product W_tk f.

    With ``jobs > 1`` the blocks are split into chunks summed in worker
    processes; the result does not depend on the split.
    """
    _check_tkv(t, f.k, f.v, strict=False)
    items = f.sorted_items()
    if jobs <= 1 or len(items) < 2 * jobs:
        counts = _accumulate((t, f.v, items))
    else:
        step = -(-len(items) // jobs)
        chunks = [(t, f.v, items[i:i + step]) for i in range(0, len(items), step)]
        counts = [0] * binomial(f.v, t)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_accumulate, chunks):
                counts = [x + y for x, y in zip(counts, part)]
    return TSubsetVector(f.v, t, tuple(counts))


def is_trade(t: int, f: SignedCollection) -> bool:
    """True iff f is nonzero and W_tk f = 0."""
    return bool(f) and apply_W(t, f).is_zero()


def is_design(t: int, lam: int, f: SignedCollection) -> bool:
    """True iff f >= 0 entrywise and W_tk f = lam * 1."""
    if any(c < 0 for _, c in f.items()):
        return False
    return apply_W(t, f).is_constant(lam)


def legs(f: SignedCollection) -> tuple[SignedCollection, SignedCollection]:
    """Split f = T0 - T1 into its nonnegative positive and negative parts."""
    t0, t1 = SignedCollection(f.v, f.k), SignedCollection(f.v, f.k)
    for block, c in f.items():
        if c > 0:
            t0.add(block, c)
        else:
            t1.add(block, -c)
    return t0, t1


def volume_report(f: SignedCollection) -> tuple[int, bool]:
    """(larger leg size, legs balanced).

    Leg sizes count blocks with multiplicity.  Unbalanced input is reported,
    not rejected, so near-trades can still be inspected.
    """
    pos = sum(c for _, c in f.items() if c > 0)
    neg = -sum(c for _, c in f.items() if c < 0)
    return max(pos, neg), pos == neg


def volume(f: SignedCollection) -> int:
    return volume_report(f)[0]


def foundation(f: SignedCollection) -> frozenset[int]:
    return frozenset(x for block in f for x in block)


def is_simple(f: SignedCollection) -> bool:
    return all(c in (1, -1) for _, c in f.items())


def is_halving(f: SignedCollection, t: int = 2) -> bool:
    """Simple t-trade whose support is all of C(X, k), with volume C(v, k)/2."""
    total = binomial(f.v, f.k)
    if len(f) != total or total % 2 or not is_simple(f):
        return False
    vol, balanced = volume_report(f)
    return balanced and vol == total // 2 and is_trade(t, f)


def halving_admissible(t: int, k: int, v: int) -> bool:
    """Parity condition of the halving conjecture: C(v-i, k-i) even for 0 <= i <= t."""
    _check_tkv(t, k, v)
    return all(binomial(v - i, k - i) % 2 == 0 for i in range(t + 1))


def complete_design(v: int, k: int) -> SignedCollection:
    """Every block of C(X, k) with coefficient 1."""
    return SignedCollection.from_blocks(v, k, iter_blocks(v, k))
