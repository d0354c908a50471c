"""End-to-end (2,3,v)-halving constructions.

* :func:`ak_halving` - greedy lex-order AK algorithm over companion trades;
* :func:`v10_halving` - signed sum of volume-10 trades over all index triples;
* :func:`partition_halving` - minimal trades on every index triple plus one
  Eulerian cycle trade (a disjoint partition of C(X, 3));
* :func:`structured_partition` - the same, with the Eulerian trade split into
  triangles from a Steiner triple system (and 4-cycles when 2n+1 = 5 mod 6);
* :func:`hill_climb_partition` - randomized search for 15 disjoint minimal
  trades covering C({0..9}, 3).

Every builder verifies its own output against ``apply_W`` before returning.
"""
from __future__ import annotations

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations, product

from .combinatorics import Labelling, binomial, default_labelling, iter_blocks, rank_lex
from .inclusion import SignedCollection, is_halving, is_simple, is_trade
from .sts import PAPER_STS, PairPartition, TripleSystem, default_pair_partition, sts_generate, verify_sts
from .trades import ClosedWalk, ak_companion, cycle_trade, minimal_trade, v10_trade

log = logging.getLogger(__name__)

KINDS = ("minimal", "cycle6", "cycle8", "cycle", "v10", "ak-companion")


class ConstructionError(RuntimeError):
    """A builder produced something that failed verification."""


class SearchCapExceeded(ConstructionError):
    def __init__(self, message: str, partial=None, iterations: int = 0):
        super().__init__(message)
        self.partial = partial
        self.iterations = iterations


@dataclass
class Constituent:
    kind: str
    trade: SignedCollection


@dataclass
class TradeDecomposition:
    v: int
    constituents: list[Constituent] = field(default_factory=list)

    def append(self, kind: str, trade: SignedCollection) -> None:
        if kind not in KINDS:
            raise ValueError(f"unknown constituent kind {kind!r}")
        self.constituents.append(Constituent(kind, trade))

    def __len__(self) -> int:
        return len(self.constituents)

    def __iter__(self):
        return iter(self.constituents)

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for c in self.constituents:
            out[c.kind] = out.get(c.kind, 0) + 1
        return out

    def is_disjoint(self) -> bool:
        """Constituent supports pairwise disjoint."""
        seen: set = set()
        for c in self.constituents:
            s = c.trade.support()
            if seen & s:
                return False
            seen |= s
        return True

    def covered(self) -> set:
        out: set = set()
        for c in self.constituents:
            out |= c.trade.support()
        return out


def sum_decomposition(d: TradeDecomposition) -> SignedCollection:
    out = SignedCollection(d.v, 3)
    for c in d.constituents:
        for block, coef in c.trade.items():
            out.add(block, coef)
    return out


def _require_4n2(v: int) -> int:
    if v < 6 or v % 4 != 2:
        raise ValueError(f"(2,3,v)-halvings need v = 4n+2 >= 6, got v={v}")
    return (v - 2) // 4


# -- AK algorithm -----------------------------------------------------------

@dataclass
class AKResult:
    halving: SignedCollection
    iterations: int
    additions: int
    subtractions: int


def ak_run(v: int, max_iterations: int | None = None, check_trades: bool = False) -> AKResult:
    """Run the AK algorithm starting from the companion trade of 012.

    Each step takes the lex-first block missing from the support and adds its
    companion trade if the sum stays simple, otherwise subtracts it.
    ``check_trades`` re-verifies the running sum after every step.
    """
    _require_4n2(v)
    cap = max_iterations if max_iterations is not None else 50 * binomial(v, 3)
    blocks = list(iter_blocks(v, 3))
    total = len(blocks)
    T = ak_companion((0, 1, 2), v)
    it = adds = subs = 0
    while not (len(T) == total and is_halving(T)):
        if it >= cap:
            raise SearchCapExceeded(f"AK algorithm did not finish within {cap} steps", T, it)
        it += 1
        B = next((b for b in blocks if b not in T), None)
        if B is None:
            raise ConstructionError("support is complete but the sum is not a halving")
        companion = ak_companion(B, v)
        trial = T + companion
        if is_simple(trial):
            T, adds = trial, adds + 1
        else:
            T, subs = T - companion, subs + 1
        if check_trades and not is_trade(2, T):
            raise ConstructionError(f"running sum stopped being a trade at step {it}")
    log.info("AK v=%d: %d iterations (%d additions, %d subtractions)", v, it, adds, subs)
    return AKResult(T, it, adds, subs)


def ak_halving(v: int, max_iterations: int | None = None) -> SignedCollection:
    return ak_run(v, max_iterations).halving


# -- V10 signed sum ----------------------------------------------------------

def v10_decomposition(v: int, labelling: Labelling | None = None, parity_offset: int = 0) -> TradeDecomposition:
    """Volume-10 trades T_alpha weighted by (-1)^(alpha0+alpha1+alpha2).

    ``parity_offset`` is added to each index before taking the parity; 1
    reproduces one-based index signs.
    """
    _require_4n2(v)
    labelling = labelling or default_labelling(v)
    d = TradeDecomposition(v)
    for alpha in combinations(range(labelling.size), 3):
        sign = (-1) ** (sum(alpha) + 3 * parity_offset)
        d.append("v10", v10_trade(alpha, labelling) * sign)
    return d


def v10_halving(v: int, labelling: Labelling | None = None, parity_offset: int = 0) -> SignedCollection:
    h = sum_decomposition(v10_decomposition(v, labelling, parity_offset))
    if not is_halving(h):
        raise ConstructionError(f"V10 signed sum at v={v} is not a halving")
    return h


# -- Eulerian partition --------------------------------------------------------

def eulerian_circuit(m: int, rng: random.Random | None = None) -> ClosedWalk:
    """Eulerian circuit of the complete graph K_m (m odd).

    Hierholzer: walk from 0 along the lowest unused neighbour until stuck,
    then splice a sub-tour in at the first tour vertex that still has unused
    edges.  With ``rng`` the neighbour is drawn at random instead.
    """
    if m < 3 or m % 2 == 0:
        raise ValueError(f"K_{m} has no Eulerian circuit (need m odd, m >= 3)")
    unused = {i: set(range(m)) - {i} for i in range(m)}

    def subtour(start: int) -> list[int]:
        tour = [start]
        cur = start
        while unused[cur]:
            nxt = rng.choice(sorted(unused[cur])) if rng else min(unused[cur])
            unused[cur].discard(nxt)
            unused[nxt].discard(cur)
            tour.append(nxt)
            cur = nxt
        return tour

    tour = subtour(0)
    while True:
        gap = next((p for p, x in enumerate(tour) if unused[x]), None)
        if gap is None:
            break
        tour[gap:gap + 1] = subtour(tour[gap])
    return ClosedWalk(tuple(zip(tour, tour[1:])))


def _minimal_part(labelling: Labelling, d: TradeDecomposition) -> None:
    a, b = labelling.a, labelling.b
    for alpha in combinations(range(labelling.size), 3):
        d.append("minimal", minimal_trade([a[i] for i in alpha], [b[i] for i in alpha], labelling.v))


def _finish(d: TradeDecomposition, what: str) -> tuple[SignedCollection, TradeDecomposition]:
    if not d.is_disjoint():
        raise ConstructionError(f"{what}: constituents overlap")
    h = sum_decomposition(d)
    if not is_halving(h):
        raise ConstructionError(f"{what}: aggregate is not a halving")
    return h, d


def partition_halving(
    v: int, labelling: Labelling | None = None, circuit: ClosedWalk | None = None
) -> tuple[SignedCollection, TradeDecomposition]:
    """Minimal trades on every index triple plus the cycle trade of an Eulerian circuit."""
    n = _require_4n2(v)
    labelling = labelling or default_labelling(v)
    d = TradeDecomposition(v)
    _minimal_part(labelling, d)
    d.append("cycle", cycle_trade(circuit or eulerian_circuit(2 * n + 1), labelling))
    return _finish(d, f"partition halving v={v}")


def default_sts_for(v: int) -> TripleSystem:
    """STS used by :func:`structured_partition` when none is given."""
    n = _require_4n2(v)
    order = 2 * n + 1 if (2 * n + 1) % 6 in (1, 3) else 2 * n - 1
    return PAPER_STS.get(order) or sts_generate(order)


def structured_partition(
    v: int,
    labelling: Labelling | None = None,
    sts: TripleSystem | None = None,
    pairs: PairPartition | None = None,
) -> tuple[SignedCollection, TradeDecomposition]:
    """Partition halving whose cycle part is cut into volume-6 and volume-8 trades.

    With m = 2n+1 indices:

    * m = 1, 3 (mod 6): one triangle per triple of an STS(m);
    * m = 5 (mod 6): one triangle per triple of an STS(m-2) on indices
      0..m-3, the triangle (m-3, m-2, m-1), and a 4-cycle (m-2, i, m-1, j)
      for each pair {i, j} of a partition of 0..m-4.
    """
    n = _require_4n2(v)
    m = 2 * n + 1
    labelling = labelling or default_labelling(v)
    sts = sts or default_sts_for(v)
    if not verify_sts(sts):
        raise ValueError("supplied triple system is not an STS")
    d = TradeDecomposition(v)
    _minimal_part(labelling, d)
    if m % 6 in (1, 3):
        if sts.order != m:
            raise ValueError(f"v={v} needs an STS({m}), got order {sts.order}")
        if pairs is not None:
            raise ValueError(f"v={v} takes no pair partition")
        for triple in sts:
            d.append("cycle6", cycle_trade(triple, labelling))
    else:
        if sts.order != m - 2:
            raise ValueError(f"v={v} needs an STS({m - 2}), got order {sts.order}")
        pairs = pairs or default_pair_partition(m - 3)
        if pairs.size != m - 3:
            raise ValueError(f"pair partition must cover indices 0..{m - 4}")
        for triple in sts:
            d.append("cycle6", cycle_trade(triple, labelling))
        d.append("cycle6", cycle_trade((m - 3, m - 2, m - 1), labelling))
        for i, j in pairs.pairs:
            d.append("cycle8", cycle_trade((m - 2, i, m - 1, j), labelling))
    return _finish(d, f"structured partition v={v}")


# -- hill climbing ---------------------------------------------------------------

HC_V = 10
HC_TRADES = 15


@dataclass(frozen=True)
class SearchConfig:
    """Hill-climb caps.

    ``max_iterations`` bounds one attempt; a fresh attempt (new RNG stream)
    starts after each miss, up to ``restart_limit`` attempts.
    ``candidate_limit`` keeps only the first f candidates for the random pick.
    """

    seed: int = 0
    max_iterations: int = 1000
    restart_limit: int = 1000
    candidate_limit: int | None = None
    jobs: int = 1

    def __post_init__(self):
        if self.max_iterations <= 0 or self.restart_limit <= 0 or self.jobs <= 0:
            raise ValueError("search caps and jobs must be positive")
        if self.candidate_limit is not None and self.candidate_limit <= 0:
            raise ValueError("candidate_limit must be positive")


_CANDIDATES: list[list[tuple[int, tuple[int, int, int]]]] | None = None


def _candidates() -> list[list[tuple[int, tuple[int, int, int]]]]:
    """Per block rank: (support bitmask, companion) for every minimal trade led by that block.

    Companions are all ordered triples from the complement, in lex order.
    """
    global _CANDIDATES
    if _CANDIDATES is None:
        table = []
        for block in iter_blocks(HC_V, 3):
            rest = [x for x in range(HC_V) if x not in block]
            row = []
            for comp in permutations(rest, 3):
                mask = 0
                for choice in product((0, 1), repeat=3):
                    blk = sorted(comp[i] if c else block[i] for i, c in enumerate(choice))
                    mask |= 1 << rank_lex(blk, HC_V)
                row.append((mask, comp))
            table.append(row)
        _CANDIDATES = table
    return _CANDIDATES


def _attempt(args) -> tuple[list[tuple[int, tuple]], int, bool]:
    seed, restart, max_iterations, candidate_limit = args
    rng = random.Random(f"{seed}:{restart}")
    table = _candidates()
    M = (1 << binomial(HC_V, 3)) - 1
    H: list[tuple[int, tuple, int]] = []  # (lead block rank, companion, support mask)
    best: list = []
    for it in range(max_iterations):
        if len(H) == HC_TRADES:
            return H, it, True
        lead = (M & -M).bit_length() - 1  # lex-first block still in M
        found = [(mask, comp) for mask, comp in table[lead] if mask & M == mask]
        if candidate_limit:
            found = found[:candidate_limit]
        if found:
            mask, comp = rng.choice(found)
            H.append((lead, comp, mask))
            M ^= mask
            if len(H) > len(best):
                best = list(H)
        else:
            M |= H.pop(rng.randrange(len(H)))[2]
    return (H, max_iterations, True) if len(H) == HC_TRADES else (best, max_iterations, False)


def _decomposition(H) -> TradeDecomposition:
    blocks = list(iter_blocks(HC_V, 3))
    d = TradeDecomposition(HC_V)
    for lead, comp, _ in sorted(H):
        d.append("minimal", minimal_trade(blocks[lead], comp, HC_V))
    return d


def hill_climb_partition(config: SearchConfig = SearchConfig()) -> TradeDecomposition:
    """Partition C({0..9}, 3) into 15 disjoint minimal trades by hill climbing.

    M starts as every block.  While fewer than 15 trades are held: if some
    minimal trade led by the lex-first block of M lies inside M, a random one
    is taken out of M; otherwise a random held trade is put back.  Attempts
    run with independent seeded streams; the lowest-numbered successful
    attempt wins, so the result does not depend on ``jobs``.
    """
    total = 0
    best: list = []
    batch = config.jobs
    for start in range(0, config.restart_limit, batch):
        args = [
            (config.seed, r, config.max_iterations, config.candidate_limit)
            for r in range(start, min(start + batch, config.restart_limit))
        ]
        if batch > 1:
            with ProcessPoolExecutor(max_workers=batch) as pool:
                results = list(pool.map(_attempt, args))
        else:
            results = [_attempt(args[0])]
        for arg, (H, its, ok) in zip(args, results):
            r = arg[1]
            total += its
            if ok:
                log.info("hill climb seed=%d: attempt %d succeeded, %d iterations total", config.seed, r, total)
                d = _decomposition(H)
                if not (d.is_disjoint() and len(d.covered()) == binomial(HC_V, 3)):
                    raise ConstructionError("hill climb returned an invalid partition")
                return d
            if len(H) > len(best):
                best = H
    raise SearchCapExceeded(
        f"hill climb found no partition in {config.restart_limit} attempts "
        f"of {config.max_iterations} iterations",
        _decomposition(best),
        total,
    )
