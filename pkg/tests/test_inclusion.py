import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from tradeforge.combinatorics import rank_lex
from tradeforge.inclusion import (
    SignedCollection,
    apply_W,
    complete_design,
    foundation,
    halving_admissible,
    is_design,
    is_halving,
    is_simple,
    is_trade,
    legs,
    volume,
    volume_report,
)
from tradeforge.sts import STS7
from tradeforge.trades import cycle_trade, minimal_trade, v10_trade
from tradeforge.combinatorics import default_labelling


def random_collection(rng, v, k, n=6, span=3):
    f = SignedCollection(v, k)
    blocks = list(combinations(range(v), k))
    for b in rng.sample(blocks, min(n, len(blocks))):
        f.add(b, rng.choice([c for c in range(-span, span + 1) if c]))
    return f


def test_single_block_image():
    f = SignedCollection.from_blocks(6, 3, [(0, 1, 2)])
    vec = apply_W(2, f)
    assert len(vec.counts) == 15
    ones = {rank_lex(p, 6) for p in [(0, 1), (0, 2), (1, 2)]}
    assert all(c == (1 if r in ones else 0) for r, c in enumerate(vec.counts))


def test_minimal_trade_image_is_zero():
    f = minimal_trade((0, 1, 2), (3, 4, 5), 6)
    coeffs = {frozenset(b): c for b, c in f.items()}
    assert all(c == 0 for c in oracle.inclusion_counts(coeffs, 6, 2).values())
    assert apply_W(2, f).is_zero()


def test_sts7_image_is_all_ones():
    vec = apply_W(2, STS7.as_collection())
    assert vec.counts == (1,) * 21


@pytest.mark.parametrize("tkv", [(2, 3, 6), (2, 3, 7), (1, 3, 7), (0, 3, 5), (2, 4, 8)])
def test_sparse_matches_dense(tkv):
    t, k, v = tkv
    rng = random.Random(hash(tkv))
    W, cols = oracle.dense_W(v, t, k)
    for _ in range(20):
        f = random_collection(rng, v, k)
        x = [f[c] for c in cols]
        dense = tuple(sum(w * xi for w, xi in zip(row, x)) for row in W)
        assert apply_W(t, f).counts == dense


def test_parallel_apply_matches_serial():
    rng = random.Random(5)
    f = random_collection(rng, 10, 3, n=100)
    assert apply_W(2, f, jobs=2) == apply_W(2, f)


@settings(max_examples=50)
@given(st.integers(0, 2**32))
def test_linearity(seed):
    rng = random.Random(seed)
    f, g = random_collection(rng, 7, 3), random_collection(rng, 7, 3)
    lhs = apply_W(2, f + g).counts
    rhs = tuple(x + y for x, y in zip(apply_W(2, f).counts, apply_W(2, g).counts))
    assert lhs == rhs


def test_apply_rejects_bad_t():
    with pytest.raises(ValueError):
        apply_W(4, SignedCollection.from_blocks(6, 3, [(0, 1, 2)]))


def test_is_trade_examples():
    assert is_trade(2, minimal_trade((0, 1, 2), (3, 4, 5), 6))
    assert not is_trade(2, SignedCollection.from_blocks(6, 3, [(0, 1, 2)]))
    assert not is_trade(2, SignedCollection(6, 3))
    six = minimal_trade((0, 1, 2), (3, 4, 5), 6) + cycle_trade((0, 1, 2), default_labelling(6))
    assert is_trade(2, six) and is_simple(six) and volume(six) == 10


def test_is_design_examples():
    assert is_design(2, 1, STS7.as_collection())
    assert is_design(2, 5, complete_design(7, 3))
    broken = STS7.as_collection()
    broken.add((0, 1, 3), -1)
    assert not is_design(2, 1, broken)
    assert not is_design(2, 0, -STS7.as_collection())


def test_legs():
    f = minimal_trade((0, 1, 2), (3, 4, 5), 6)
    t0, t1 = legs(f)
    assert len(t0) == len(t1) == 4
    assert t0 - t1 == f
    pos = STS7.as_collection()
    p0, p1 = legs(pos)
    assert p0 == pos and not p1


def test_volume_foundation_simple():
    m = minimal_trade((0, 1, 2), (3, 4, 5), 6)
    assert volume(m) == 4 and len(foundation(m)) == 6 and is_simple(m)
    t = v10_trade((1, 2, 4), default_labelling(10))
    assert volume(t) == 10 and len(foundation(t)) == 6 and is_simple(t)
    empty = SignedCollection(6, 3)
    assert volume(empty) == 0 and foundation(empty) == frozenset()


def test_volume_report_flags_unbalanced():
    f = SignedCollection(6, 3, {(0, 1, 2): 2, (0, 1, 3): -1})
    assert volume_report(f) == (2, False)
    assert volume_report(minimal_trade((0, 1, 2), (3, 4, 5), 6)) == (4, True)
    assert not is_simple(f)


def test_is_halving_rejects_incomplete_support():
    assert not is_halving(minimal_trade((0, 1, 2), (3, 4, 5), 6))
    assert not is_halving(complete_design(6, 3))


def test_halving_admissible():
    assert halving_admissible(2, 3, 10)
    assert not halving_admissible(2, 3, 9)
    for v in (6, 10, 14, 18, 22):
        assert halving_admissible(2, 3, v)
    for v in (7, 8, 9, 12):
        assert not halving_admissible(2, 3, v)


def test_collection_arithmetic():
    f = SignedCollection(6, 3, {(2, 1, 0): 1})
    assert f[(0, 1, 2)] == 1 and (2, 0, 1) in f
    assert not (f - f)
    assert (2 * f)[(0, 1, 2)] == 2 and (-f)[(0, 1, 2)] == -1
    with pytest.raises(ValueError):
        f + SignedCollection(7, 3)
    with pytest.raises(ValueError):
        f.add((0, 1, 6), 1)


def test_coefficient_overflow_is_detected():
    f = SignedCollection(6, 3, {(0, 1, 2): 2**62})
    with pytest.raises(OverflowError):
        f * 2
    with pytest.raises(OverflowError):
        f + f
