"""Deterministic fixture families for sweeps and sensitivity checks.

Everything here is index-addressed, never random: the exhaustive sweeps
enumerate all width-1 generator tables against a small family of inputs
and schedule pairs, and the mutation fixture is a hand-built system pair
on which each deliberate fault is observable.
"""

from __future__ import annotations

from fractions import Fraction

from .boolfn import BoolVec, GeneratorFn
from .progressive import ProgressiveFn, ProgressiveTail, make_progressive
from .signals import Signal, constant_signal, signal_from_samples, signals_equal
from .orbit import orbit
from .systems import RegularSystem

ZERO = BoolVec((0,))
ONE = BoolVec((1,))


def width1_generator(index: int) -> GeneratorFn:
    """One of the 16 single-bit generators, by truth-table index."""
    if not 0 <= index < 16:
        raise ValueError(f"width-1 generator index must be in [0, 16), got {index}")
    rows = tuple(BoolVec(((index >> (3 - i)) & 1,)) for i in range(4))
    return GeneratorFn(1, 1, rows)


def all_width1_generators() -> tuple[GeneratorFn, ...]:
    return tuple(width1_generator(i) for i in range(16))


def fixture_inputs(width: int) -> tuple[Signal, ...]:
    """Constant zeros, a step to ones at t=2, and a period-2 wave."""
    zeros = BoolVec.zeros(width)
    ones = BoolVec.ones(width)
    constant = constant_signal(zeros)
    step = signal_from_samples(width, zeros, [(Fraction(2), ones)])
    wave = signal_from_samples(
        width,
        zeros,
        [(Fraction(0), ones), (Fraction(1), zeros)],
        periodic=(Fraction(0), Fraction(2)),
    )
    return (constant, step, wave)


def _ticks(width: int, start: Fraction, period: Fraction,
           prefix: tuple[tuple[Fraction, BoolVec], ...] = ()) -> ProgressiveFn:
    ones = BoolVec.ones(width)
    return make_progressive(
        width, prefix, ProgressiveTail(start, period, ((Fraction(0), ones),))
    )


def fixture_schedule_pairs(
    first_width: int, second_width: int
) -> tuple[tuple[ProgressiveFn, ProgressiveFn], ...]:
    """Aligned integer ticks, interleaved ticks, and offset rational ticks."""
    aligned = (
        _ticks(first_width, Fraction(0), Fraction(1)),
        _ticks(second_width, Fraction(0), Fraction(1)),
    )
    interleaved = (
        _ticks(first_width, Fraction(0), Fraction(1)),
        _ticks(second_width, Fraction(1, 2), Fraction(1)),
    )
    offset = (
        _ticks(first_width, Fraction(1, 3), Fraction(1)),
        _ticks(
            second_width,
            Fraction(1, 2),
            Fraction(3, 2),
            prefix=((Fraction(0), BoolVec.ones(second_width)),),
        ),
    )
    return (aligned, interleaved, offset)


def fixture_system_pair(a: int, b: int) -> tuple[RegularSystem, RegularSystem]:
    """Deterministic width-1 system pair for generator tables ``a`` and ``b``.

    The first system admits the three fixture inputs with start-state and
    schedule choices steered by the bits of ``a`` and ``b``; the second
    admits exactly the runs the first can produce.
    """
    gf = width1_generator(a)
    gh = width1_generator(b)
    pairs = fixture_schedule_pairs(1, 1)
    rhos = tuple(rho for rho, _ in pairs)
    sigmas = tuple(sigma for _, sigma in pairs)

    inputs = fixture_inputs(1)
    initial: list[tuple[BoolVec, ...]] = []
    computation: dict[tuple[BoolVec, int], tuple[ProgressiveFn, ...]] = {}
    for k in range(len(inputs)):
        states = (ZERO, ONE) if (a >> k) & 1 else (ZERO,)
        initial.append(states)
        for s, state in enumerate(states):
            picks = [rhos[(a + k + s) % 3]]
            if (b >> k) & 1:
                picks.append(rhos[(a + k + s + 1) % 3])
            computation[(state, k)] = tuple(picks)
    f = RegularSystem(gf, inputs, initial, computation)

    runs: list[Signal] = []
    for k, u in enumerate(inputs):
        for state in initial[k]:
            for rho in computation[(state, k)]:
                x = orbit(gf, rho, state, u)
                if not any(signals_equal(x, seen) for seen in runs):
                    runs.append(x)
    initial2: list[tuple[BoolVec, ...]] = []
    computation2: dict[tuple[BoolVec, int], tuple[ProgressiveFn, ...]] = {}
    for j in range(len(runs)):
        states = (ZERO, ONE) if (b >> (j % 4)) & 1 else (ONE,)
        initial2.append(states)
        for s, state in enumerate(states):
            picks = [sigmas[(b + j + s) % 3]]
            if (a >> (j % 4)) & 1:
                picks.append(sigmas[(b + j + s + 1) % 3])
            computation2[(state, j)] = tuple(picks)
    h = RegularSystem(gh, runs, initial2, computation2)
    return f, h


def toggle_system() -> RegularSystem:
    """Single-bit system that inverts its state on every integer tick."""
    toggle = GeneratorFn(1, 1, (ONE, ONE, ZERO, ZERO))
    u = constant_signal(ZERO)
    rho = _ticks(1, Fraction(0), Fraction(1))
    return RegularSystem(toggle, [u], [(ZERO,)], {(ZERO, 0): (rho,)})


def mutation_sensitive_pair() -> tuple[RegularSystem, RegularSystem]:
    """A system pair on which each named fault produces a wrong answer set.

    The first stage copies its input and admits two schedules whose runs
    differ (they sample a step at different times); the second stage
    holds its state and admits a different start state for each of those
    runs.  Dropping the admission filter pairs a schedule with a start
    state its run never admits; collapsing the schedule union loses one
    start-state pair entirely.  Either way the answer set changes.
    """
    copy = GeneratorFn(1, 1, (ZERO, ONE, ZERO, ONE))
    hold = GeneratorFn(1, 1, (ZERO, ZERO, ONE, ONE))
    step = signal_from_samples(1, ZERO, [(Fraction(2), ONE)])
    rho_int = _ticks(1, Fraction(0), Fraction(1))
    rho_third = _ticks(1, Fraction(1, 3), Fraction(1))
    f = RegularSystem(
        copy, [step], [(ZERO,)], {(ZERO, 0): (rho_int, rho_third)}
    )
    x1 = orbit(copy, rho_int, ZERO, step)
    x2 = orbit(copy, rho_third, ZERO, step)
    sigma = _ticks(1, Fraction(0), Fraction(1))
    h = RegularSystem(
        hold,
        [x1, x2],
        [(ZERO,), (ONE,)],
        {(ZERO, 0): (sigma,), (ONE, 1): (sigma,)},
    )
    return f, h
