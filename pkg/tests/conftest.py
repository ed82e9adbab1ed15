"""Shared test helpers: tiny builders and the no-cycle orbit oracle."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from regasys.boolfn import BoolVec, GeneratorFn, masked_update
from regasys.orbit import merged_times
from regasys.progressive import ProgressiveTail, eval_progressive, make_progressive
from regasys.signals import PeriodicTail, Signal, canonicalize, eval_signal


def bv(text: str) -> BoolVec:
    return BoolVec.from_string(text)


def gen_from_bits(state_width: int, input_width: int, bits: str) -> GeneratorFn:
    """Generator from the concatenated rows of its table, row-major."""
    rows = 1 << (state_width + input_width)
    assert len(bits) == rows * state_width
    table = tuple(
        bv(bits[i * state_width : (i + 1) * state_width]) for i in range(rows)
    )
    return GeneratorFn(state_width, input_width, table)


def integer_ticks(width: int, start: int = 0, period: int = 1):
    return make_progressive(
        width,
        (),
        ProgressiveTail(
            Fraction(start), Fraction(period), ((Fraction(0), BoolVec.ones(width)),)
        ),
    )


def naive_state_at(gen, rho, mu, u, t: Fraction) -> BoolVec:
    """Step every merged event up to t; no cycle detection anywhere."""
    current = mu
    for tk in merged_times(u, rho):
        if tk > t:
            break
        current = masked_update(
            gen, eval_progressive(rho, tk), current, eval_signal(u, tk)
        )
    return current


def orbit_probe_times(result: Signal, u: Signal, rho, extra: int = 0):
    """Merged event times up to the result's tail start + 4 periods."""
    if isinstance(result.tail, PeriodicTail):
        stop = result.tail.start + 4 * result.tail.period
    else:
        last = result.switches[-1][0] if result.switches else Fraction(0)
        stop = last + 4
    stop = max(stop, rho.tail.start + 4 * rho.tail.period)
    times = list(
        itertools.takewhile(lambda tk: tk <= stop, merged_times(u, rho))
    )
    if extra:
        rng = random.Random(1234)
        times += [
            tk + Fraction(rng.randint(1, 6), 7) for tk in times[:extra]
        ] + [Fraction(-3, 2)]
    return times


@pytest.fixture
def rng() -> random.Random:
    return random.Random(987654321)
