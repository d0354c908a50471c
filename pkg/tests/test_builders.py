import random
from itertools import combinations

import pytest

from tradeforge.builders import (
    ConstructionError,
    SearchCapExceeded,
    SearchConfig,
    TradeDecomposition,
    ak_run,
    default_sts_for,
    eulerian_circuit,
    hill_climb_partition,
    partition_halving,
    structured_partition,
    sum_decomposition,
    v10_decomposition,
    v10_halving,
)
from tradeforge.combinatorics import binomial, default_labelling, iter_blocks
from tradeforge.inclusion import SignedCollection, foundation, is_halving, is_trade, legs, volume
from tradeforge.sts import STS7, STS9, PairPartition, sts_generate
from tradeforge.trades import cycle_trade, minimal_trade

ADMISSIBLE_V = [6, 10, 14, 18, 22, 26]


def edges_of(walk):
    return [frozenset(e) for e in walk.edges]


# -- eulerian circuit


def test_circuit_triangle():
    assert eulerian_circuit(3).edges == ((0, 1), (1, 2), (2, 0))


@pytest.mark.parametrize("m", [3, 5, 7, 9, 11, 13])
def test_circuit_covers_each_edge_once(m):
    e = edges_of(eulerian_circuit(m))
    assert len(e) == binomial(m, 2) == len(set(e))
    walk = eulerian_circuit(m)
    assert walk.edges[0][0] == 0 and walk.edges[-1][1] == 0


def test_random_circuit_is_valid_and_seeded():
    w1 = eulerian_circuit(9, random.Random(3))
    w2 = eulerian_circuit(9, random.Random(3))
    assert w1 == w2
    assert len(set(edges_of(w1))) == 36


@pytest.mark.parametrize("m", [4, 2, 1])
def test_circuit_rejects_even(m):
    with pytest.raises(ValueError):
        eulerian_circuit(m)


# -- partition / structured


@pytest.mark.parametrize("v", ADMISSIBLE_V)
def test_partition_halving(v):
    h, d = partition_halving(v)
    assert is_halving(h) and volume(h) == binomial(v, 3) // 2
    assert d.counts() == {"minimal": binomial(v // 2, 3), "cycle": 1}
    assert d.is_disjoint() and len(d.covered()) == binomial(v, 3)


@pytest.mark.parametrize("v", ADMISSIBLE_V)
def test_partition_supports_split_by_index_class(v):
    lab = default_labelling(v)
    idx = {x: i for i, x in enumerate(lab.a)} | {x: i for i, x in enumerate(lab.b)}
    _, d = partition_halving(v)
    for c in d:
        for blk in c.trade:
            distinct = len({idx[x] for x in blk}) == 3
            assert distinct == (c.kind == "minimal")


def test_partition_with_random_circuit():
    h, _ = partition_halving(14, circuit=eulerian_circuit(7, random.Random(1)))
    assert is_halving(h)


def test_partition_v6_is_the_volume_10_trade():
    h, d = partition_halving(6)
    lab = default_labelling(6)
    assert sum_decomposition(d) == minimal_trade((0, 1, 2), (3, 4, 5), 6) + cycle_trade((0, 1, 2), lab)
    assert volume(h) == 10


@pytest.mark.parametrize("v", [4, 8, 12, 2])
def test_partition_rejects(v):
    with pytest.raises(ValueError):
        partition_halving(v)


@pytest.mark.parametrize("v", ADMISSIBLE_V)
def test_structured_partition(v):
    n = (v - 2) // 4
    m = 2 * n + 1
    h, d = structured_partition(v)
    assert is_halving(h)
    counts = d.counts()
    assert counts["minimal"] == binomial(m, 3)
    if m % 6 in (1, 3):
        assert counts["cycle6"] == binomial(m, 2) // 3 and "cycle8" not in counts
    else:
        assert counts["cycle6"] == (2 * n - 1) * (2 * n - 2) // 6 + 1
        assert counts["cycle8"] == n - 1
    cycle_part = SignedCollection(v, 3)
    for c in d:
        if c.kind != "minimal":
            cycle_part = cycle_part + c.trade
    assert is_trade(2, cycle_part) and volume(cycle_part) == 2 * binomial(m, 2)
    _, pd = partition_halving(v)
    eulerian = next(c.trade for c in pd if c.kind == "cycle")
    assert cycle_part.support() == eulerian.support()


def test_structured_uses_paper_fixtures():
    assert default_sts_for(14) == STS7
    assert default_sts_for(22) == STS9
    assert default_sts_for(26) == sts_generate(13)


def test_structured_v22_counts():
    h, d = structured_partition(22, sts=STS9, pairs=PairPartition(8, ((0, 1), (2, 3), (4, 5), (6, 7))))
    assert d.counts() == {"minimal": 165, "cycle6": 13, "cycle8": 4}
    assert volume(h) == 165 * 4 + 13 * 6 + 4 * 8 == 770


def test_structured_accepts_other_sts():
    h, _ = structured_partition(14, sts=sts_generate(7))
    assert is_halving(h)


def test_structured_rejects_mismatched_sts():
    with pytest.raises(ValueError):
        structured_partition(14, sts=STS9)
    with pytest.raises(ValueError):
        structured_partition(22, sts=STS7)
    with pytest.raises(ValueError):
        structured_partition(22, pairs=PairPartition(6, ((0, 1), (2, 3), (4, 5))))


# -- V10


@pytest.mark.parametrize("v", ADMISSIBLE_V)
@pytest.mark.parametrize("offset", [0, 1])
def test_v10_halving(v, offset):
    h = v10_halving(v, parity_offset=offset)
    assert is_halving(h) and volume(h) == binomial(v, 3) // 2
    assert len(v10_decomposition(v)) == binomial(v // 2, 3)


def test_v10_parity_offset_negates():
    assert v10_halving(10, parity_offset=1) == -v10_halving(10)


# -- AK


@pytest.mark.parametrize("v", [6, 10, 14])
def test_ak_halving(v):
    res = ak_run(v, check_trades=True)
    assert is_halving(res.halving)
    assert res.iterations == res.additions + res.subtractions


def test_ak_legs_at_10():
    t0, t1 = legs(ak_run(10).halving)
    assert len(t0) == len(t1) == 60


def test_ak_rejects_and_caps():
    with pytest.raises(ValueError):
        ak_run(8)
    with pytest.raises(SearchCapExceeded) as info:
        ak_run(14, max_iterations=3)
    assert info.value.iterations == 3 and is_trade(2, info.value.partial)


# -- hill climb


def check_partition(d):
    assert len(d) == 15 and all(c.kind == "minimal" for c in d)
    assert all(len(c.trade) == 8 and is_trade(2, c.trade) for c in d)
    assert d.is_disjoint() and d.covered() == set(iter_blocks(10, 3))
    assert is_halving(sum_decomposition(d))


def test_hill_climb_default():
    check_partition(hill_climb_partition())


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_hill_climb_is_reproducible(seed):
    d1 = hill_climb_partition(SearchConfig(seed=seed))
    d2 = hill_climb_partition(SearchConfig(seed=seed))
    check_partition(d1)
    assert [c.trade for c in d1] == [c.trade for c in d2]


def test_hill_climb_jobs_do_not_change_result():
    a = hill_climb_partition(SearchConfig(seed=7))
    b = hill_climb_partition(SearchConfig(seed=7, jobs=2))
    assert [c.trade for c in a] == [c.trade for c in b]


def test_hill_climb_candidate_limit():
    check_partition(hill_climb_partition(SearchConfig(seed=4, candidate_limit=5)))


def test_hill_climb_cap_reports_partial():
    with pytest.raises(SearchCapExceeded) as info:
        hill_climb_partition(SearchConfig(seed=0, max_iterations=5, restart_limit=2))
    partial = info.value.partial
    assert isinstance(partial, TradeDecomposition) and 0 < len(partial) < 15
    assert partial.is_disjoint()


def test_search_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(max_iterations=0)
    with pytest.raises(ValueError):
        SearchConfig(candidate_limit=0)


# -- decompositions


def test_sum_of_empty_decomposition():
    assert not sum_decomposition(TradeDecomposition(10))


def test_decomposition_rejects_unknown_kind():
    with pytest.raises(ValueError):
        TradeDecomposition(6).append("bogus", SignedCollection(6, 3))


def test_every_constructor_respects_trade_bounds():
    for v in (6, 10, 14):
        for builder in (partition_halving, structured_partition):
            _, d = builder(v)
            for c in d:
                assert volume(c.trade) >= 4 and len(foundation(c.trade)) >= 6
