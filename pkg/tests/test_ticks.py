import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regasys.errors import FormatError, OrderingError, ValidationError
from regasys.ticks import (
    PeriodicTicks,
    TickSequence,
    frac_lcm,
    format_rattime,
    merge_sequences,
    parse_rattime,
    sequence_contains,
)


def seq(prefix, start, period, offsets) -> TickSequence:
    return TickSequence(
        tuple(F(t) for t in prefix),
        PeriodicTicks(F(start), F(period), tuple(F(o) for o in offsets)),
    )


def test_parse_rattime():
    assert parse_rattime("3/2") == F(3, 2)
    assert parse_rattime("-4") == F(-4)
    assert format_rattime(F(7, 3)) == "7/3"
    for bad in ("", "x", "1/0", "1.5.2"):
        with pytest.raises(FormatError):
            parse_rattime(bad)


def test_frac_lcm_known_values():
    assert frac_lcm(F(1), F(1)) == F(1)
    assert frac_lcm(F(1, 2), F(1, 3)) == F(1)
    assert frac_lcm(F(3, 2), F(1)) == F(3)
    assert frac_lcm(F(2, 3), F(1, 2)) == F(2)


@given(
    st.fractions(min_value=F(1, 6), max_value=F(5), max_denominator=12),
    st.fractions(min_value=F(1, 6), max_value=F(5), max_denominator=12),
)
def test_frac_lcm_divides_both(a, b):
    out = frac_lcm(a, b)
    assert (out / a).denominator == 1
    assert (out / b).denominator == 1
    # minimality over multiples of a
    k = 1
    while k * a < out:
        assert ((k * a) / b).denominator != 1
        k += 1


def test_tick_validation():
    with pytest.raises(OrderingError):
        PeriodicTicks(F(0), F(1), (F(1, 2), F(1, 2)))
    with pytest.raises(ValidationError):
        PeriodicTicks(F(0), F(1), (F(3, 2),))  # offset beyond period
    with pytest.raises(OrderingError):
        seq([2, 1], 3, 1, [0])  # prefix not increasing
    with pytest.raises(OrderingError):
        seq([5], 3, 1, [0])  # prefix reaches past the tail start


def test_times_enumeration():
    s = seq([F(-1), F(1, 2)], 2, F(3, 2), [0, 1])
    assert s.first(7) == (F(-1), F(1, 2), F(2), F(3), F(7, 2), F(9, 2), F(5))
    assert s.times_below(F(7, 2)) == [F(-1), F(1, 2), F(2), F(3)]
    assert s.times_in(F(2), F(7, 2)) == [F(2), F(3)]
    assert s.contains(F(9, 2))
    assert not s.contains(F(4))
    assert not s.contains(F(0))


def test_merge_sequences_is_the_union():
    a = seq([], 0, 1, [0])
    b = seq([F(-2)], F(1, 2), F(3, 2), [0, F(1, 2)])
    merged = merge_sequences([a, b])
    horizon = F(20)
    want = sorted(set(a.times_below(horizon)) | set(b.times_below(horizon)))
    got = merged.times_below(horizon)
    assert got == want


@given(st.integers(0, 2**31))
@settings(max_examples=60, deadline=None)
def test_merge_sequences_union_random(seed):
    import random

    rng = random.Random(seed)

    def rand_seq():
        prefix = sorted(
            {F(rng.randint(-4, 8), rng.choice((1, 2, 3))) for _ in range(rng.randint(0, 2))}
        )
        start = (prefix[-1] if prefix else F(0)) + F(rng.randint(1, 4), rng.choice((1, 2)))
        period = F(rng.randint(1, 6), rng.choice((1, 2, 3)))
        offsets = sorted({F(rng.randint(0, 11), 4) % period for _ in range(rng.randint(1, 3))})
        return seq(prefix, start, period, offsets)

    seqs = [rand_seq() for _ in range(rng.randint(1, 3))]
    merged = merge_sequences(seqs)
    horizon = max(s.tail.start for s in seqs) + 12
    want = sorted(set().union(*(s.times_below(horizon) for s in seqs)))
    assert merged.times_below(horizon) == want


def test_merge_reduces_redundant_period():
    # both tick every integer, written with period 2
    a = seq([], 0, 2, [0, 1])
    b = seq([], 1, 2, [0, 1])
    merged = merge_sequences([a, b])
    assert merged.tail.period == F(1)
    assert merged.tail.offsets == (F(0),)


def test_sequence_contains_witness():
    big = seq([], 0, F(1, 2), [0])
    small = seq([], 0, 1, [0])
    assert sequence_contains(big, small) is None
    missing = sequence_contains(small, big)
    assert missing is not None and small.contains(missing) is False
