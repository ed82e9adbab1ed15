"""Seeded random construction of signals, schedules, and systems.

Everything draws from a caller-supplied random.Random, so runs are
reproducible from the seed alone.  Times are small rationals; widths
stay at desk scale.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .boolfn import BoolVec, GeneratorFn, all_vectors
from .orbit import orbit
from .progressive import ProgressiveFn, ProgressiveTail, make_progressive
from .signals import Signal, signal_from_samples, signals_equal
from .systems import RegularSystem

_DENOMINATORS = (1, 2, 3, 4)


def rand_bits(rng: random.Random, width: int) -> BoolVec:
    return BoolVec(tuple(rng.randint(0, 1) for _ in range(width)))


def rand_time(rng: random.Random, lo: int = 0, hi: int = 8) -> Fraction:
    den = rng.choice(_DENOMINATORS)
    return Fraction(rng.randint(lo * den, hi * den), den)


def _increasing_times(rng: random.Random, count: int, lo: int = 0, hi: int = 8) -> list[Fraction]:
    times = sorted({rand_time(rng, lo, hi) for _ in range(count)})
    return times


def rand_generator(rng: random.Random, state_width: int, input_width: int) -> GeneratorFn:
    rows = tuple(
        rand_bits(rng, state_width)
        for _ in range(1 << (state_width + input_width))
    )
    return GeneratorFn(state_width, input_width, rows)


def rand_signal(rng: random.Random, width: int) -> Signal:
    initial = rand_bits(rng, width)
    head_times = _increasing_times(rng, rng.randint(0, 3))
    samples = [(t, rand_bits(rng, width)) for t in head_times]
    periodic: Optional[tuple[Fraction, Fraction]] = None
    if rng.random() < 0.5:
        gap = rand_time(rng, 0, 3)
        if gap == 0:
            gap = Fraction(1, 2)
        start = (head_times[-1] if head_times else Fraction(0)) + gap
        den = rng.choice(_DENOMINATORS)
        period = Fraction(rng.randint(1, 3 * den), den)
        offsets = sorted({
            rand_time(rng, 0, 100) % period for _ in range(rng.randint(1, 3))
        })
        samples.extend((start + off, rand_bits(rng, width)) for off in offsets)
        periodic = (start, period)
    return signal_from_samples(width, initial, samples, periodic)


def rand_progressive(rng: random.Random, width: int) -> ProgressiveFn:
    prefix_times = _increasing_times(rng, rng.randint(0, 2), 0, 5)
    prefix = tuple((t, rand_bits(rng, width)) for t in prefix_times)
    start = (prefix_times[-1] if prefix_times else Fraction(0)) + rand_time(rng, 1, 3)
    den = rng.choice(_DENOMINATORS)
    period = Fraction(rng.randint(1, 3 * den), den)
    offsets = sorted({rand_time(rng, 0, 100) % period for _ in range(rng.randint(1, 3))})
    pattern = [[t, list(rand_bits(rng, width).bits)] for t in offsets]
    # every coordinate must fire somewhere on the periodic part
    for i in range(width):
        if not any(bits[i] for _, bits in pattern):
            pattern[rng.randrange(len(pattern))][1][i] = 1
    tail = ProgressiveTail(
        start, period, tuple((t, BoolVec(tuple(bits))) for t, bits in pattern)
    )
    return make_progressive(width, prefix, tail)


def _distinct_signals(rng: random.Random, width: int, count: int) -> list[Signal]:
    out: list[Signal] = []
    attempts = 0
    while len(out) < count and attempts < 20 * count:
        attempts += 1
        sig = rand_signal(rng, width)
        if sig not in out:
            out.append(sig)
    return out


def rand_system(
    rng: random.Random,
    state_width: int,
    input_width: int,
    input_count: int = 1,
    max_states: int = 2,
    max_rhos: int = 2,
    generator: Optional[GeneratorFn] = None,
    inputs: Optional[list[Signal]] = None,
) -> RegularSystem:
    gen = generator or rand_generator(rng, state_width, input_width)
    if inputs is None:
        inputs = _distinct_signals(rng, input_width, input_count)
    initial = []
    computation = {}
    for k in range(len(inputs)):
        pool = list(all_vectors(state_width))
        rng.shuffle(pool)
        states = tuple(pool[: rng.randint(1, max_states)])
        initial.append(states)
        for state in states:
            computation[(state, k)] = tuple(
                rand_progressive(rng, state_width)
                for _ in range(rng.randint(1, max_rhos))
            )
    return RegularSystem(gen, inputs, initial, computation)


def closure_partner(
    rng: random.Random,
    f: RegularSystem,
    state_width: int,
    max_states: int = 2,
    max_rhos: int = 2,
) -> RegularSystem:
    """A random second stage admitting every run the first can produce."""
    unique: list[Signal] = []
    for k, u in enumerate(f.inputs):
        for mu in f.initial_states[k]:
            for rho in f.computation[(mu, k)]:
                x = orbit(f.generator, rho, mu, u)
                if not any(signals_equal(x, seen) for seen in unique):
                    unique.append(x)
    return rand_system(
        rng,
        state_width,
        f.generator.state_width,
        max_states=max_states,
        max_rhos=max_rhos,
        inputs=unique,
    )
