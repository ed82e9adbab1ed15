import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regasys.boolfn import BoolVec
from regasys.errors import ContainmentError, NotProgressiveError, OrderingError
from regasys.progressive import (
    ProgressiveFn,
    ProgressiveTail,
    eval_progressive,
    make_progressive,
    product_progressive,
    reindex_on,
    tick_sequence,
)
from regasys.ticks import merge_sequences

from conftest import bv, integer_ticks


def prog(width, prefix, start, period, pattern) -> ProgressiveFn:
    return make_progressive(
        width,
        tuple((F(t), bv(v)) for t, v in prefix),
        ProgressiveTail(F(start), F(period), tuple((F(o), bv(v)) for o, v in pattern)),
    )


def test_coverage_required_per_coordinate():
    with pytest.raises(NotProgressiveError) as err:
        prog(2, [], 0, 1, [(0, "10")])
    assert err.value.coordinate == 2
    # prefix firing is not enough, the periodic part must cover
    with pytest.raises(NotProgressiveError):
        prog(2, [(0, "11")], 1, 1, [(0, "10")])


def test_prefix_must_sit_before_tail():
    with pytest.raises(OrderingError):
        prog(1, [(2, "1")], 2, 1, [(0, "1")])
    with pytest.raises(OrderingError):
        prog(1, [(1, "1"), (1, "1")], 2, 1, [(0, "1")])


def test_eval_progressive_masks():
    rho = prog(2, [(-1, "01")], 0, F(3, 2), [(0, "11"), (1, "10")])
    assert eval_progressive(rho, F(-1)) == bv("01")
    assert eval_progressive(rho, F(-1, 2)) == bv("00")
    assert eval_progressive(rho, F(0)) == bv("11")
    assert eval_progressive(rho, F(1)) == bv("10")
    assert eval_progressive(rho, F(3, 2)) == bv("11")
    assert eval_progressive(rho, F(5, 2)) == bv("10")
    assert eval_progressive(rho, F(1, 2)) == bv("00")


def test_tick_sequence_matches_eval_support():
    rho = prog(1, [(-2, "1")], 1, 2, [(0, "1"), ("1/2", "1")])
    ts = tick_sequence(rho)
    assert ts.times_below(F(4)) == [F(-2), F(1), F(3, 2), F(3), F(7, 2)]


def _rand_prog(seed, width):
    from regasys.generate import rand_progressive

    return rand_progressive(random.Random(seed), width)


@given(st.integers(0, 2**31), st.integers(0, 2**31))
@settings(max_examples=100, deadline=None)
def test_product_progressive_pointwise_law(s1, s2):
    a = _rand_prog(s1, 2)
    b = _rand_prog(s2, 1)
    ab = product_progressive(a, b)
    # always a valid schedule again
    assert isinstance(ab, ProgressiveFn) and ab.width == 3
    merged = merge_sequences([tick_sequence(a), tick_sequence(b)])
    for t in merged.first(40):
        assert eval_progressive(ab, t) == eval_progressive(a, t).concat(
            eval_progressive(b, t)
        )
    # off-support times give the zero mask
    rng = random.Random(s1 ^ s2)
    for _ in range(20):
        t = F(rng.randint(-10, 60), rng.randint(1, 11))
        if merged.contains(t):
            continue
        assert eval_progressive(ab, t) == BoolVec.zeros(3)


def test_product_progressive_interleaved_example():
    # evens on one side, odds on the other: merged integers alternate masks
    a = integer_ticks(1, start=0, period=2)
    b = integer_ticks(1, start=1, period=2)
    ab = product_progressive(a, b)
    assert eval_progressive(ab, F(0)) == bv("10")
    assert eval_progressive(ab, F(1)) == bv("01")
    assert eval_progressive(ab, F(2)) == bv("10")
    assert eval_progressive(ab, F(1, 2)) == bv("00")


def test_reindex_on_requires_containment():
    rho = integer_ticks(1)
    merged = merge_sequences([tick_sequence(rho), tick_sequence(integer_ticks(1, 0, 2))])
    out = reindex_on(rho, merged, 5)
    assert [t for t, _ in out] == [F(0), F(1), F(2), F(3), F(4)]
    assert all(mask == bv("1") for _, mask in out)
    sparse = tick_sequence(integer_ticks(1, 0, 2))
    with pytest.raises(ContainmentError):
        reindex_on(rho, sparse, 5)
